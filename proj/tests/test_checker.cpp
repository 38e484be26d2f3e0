#include <doctest.h>

#include "crosscap/checker.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

using namespace crosscap;

namespace {

Script bundled(const std::string& name) {
    std::optional<std::string> text = bundled_script(name);
    REQUIRE(text.has_value());
    return Script::parse(*text);
}

const StepReport& step(const ScriptReport& rep, const std::string& name) {
    for (const StepReport& s : rep.steps)
        if (s.name == name) return s;
    const std::string missing = "no step named " + name;
    REQUIRE_MESSAGE(false, missing);
    static StepReport dummy;
    return dummy;
}

std::set<std::string> axiom_set(const ScriptReport& rep) {
    return {rep.axioms.begin(), rep.axioms.end()};
}

// Folds the genus-dependent boundary indices out of a fact key so trusted
// bases at different genera can be compared shape-for-shape.
std::string fold_genus(std::string key, int g) {
    auto replace_all = [&key](const std::string& from, const std::string& to) {
        size_t pos = 0;
        while ((pos = key.find(from, pos)) != std::string::npos) {
            key.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("alpha" + std::to_string(g - 1), "alpha{g-1}");
    replace_all("alpha" + std::to_string(g - 4), "alpha{g-4}");
    replace_all("u" + std::to_string(g - 1), "u{g-1}");
    replace_all("u" + std::to_string(g - 4), "u{g-4}");
    return key;
}

} // namespace

TEST_CASE("index expressions and substitution") {
    std::map<std::string, int> vars{{"g", 14}, {"i", 3}};
    CHECK(eval_index_expr("g-4", vars) == 10);
    CHECK(eval_index_expr("i+1", vars) == 4);
    CHECK(eval_index_expr("2", vars) == 2);
    CHECK(eval_index_expr("g - i - 1", vars) == 10);
    CHECK_THROWS_AS(eval_index_expr("k+1", vars), ParseError);
    CHECK_THROWS_AS(eval_index_expr("", vars), ParseError);
    CHECK(substitute_indices("u{g-4} A2 C2^-1", vars) == "u10 A2 C2^-1");
    CHECK(substitute_indices("R{i}", vars) == "R3");
    CHECK(substitute_indices("Gamma{i+1}^-1", vars) == "Gamma4^-1");
    CHECK(substitute_indices("no braces", vars) == "no braces");
    CHECK_THROWS_AS(substitute_indices("u{g-4", vars), ParseError);
}

TEST_CASE("script parsing recovers the full structure") {
    Script sc = bundled("thm_main");
    CHECK(sc.name == "thm_main");
    CHECK(sc.min_genus == 14);
    CHECK(sc.generator_T);
    REQUIRE(sc.generators.size() == 1);
    CHECK(sc.generators[0].first == "G1");
    CHECK(sc.generators[0].second == "u{g-4} A2 C2^-1");
    CHECK(sc.targets.size() == 4);
    int steps = 0, loops = 0;
    for (const auto& item : sc.items)
        std::holds_alternative<SourceStep>(item) ? ++steps : ++loops;
    CHECK(steps == 22);
    CHECK(loops == 1);
}

TEST_CASE("script parse errors are line-addressed") {
    CHECK_THROWS_AS(Script::parse("min_genus 5\n"), ParseError); // no header
    CHECK_THROWS_AS(Script::parse("script x\nD1 := foo => A2 [wrong]\n"), ParseError);
    CHECK_THROWS_AS(Script::parse("script x\nD1 := foo => A2 [free] !nope\n"), ParseError);
    CHECK_THROWS_AS(Script::parse("script x\nD1 := => A2 [free]\n"), ParseError);
    CHECK_THROWS_AS(Script::parse("script x\nD1 := conj(T) => A2 [free]\n"), ParseError);
    CHECK_THROWS_AS(Script::parse("script x\nforeach i = 2 :: D{i} := T => T [free]\n"),
                    ParseError);
    try {
        Script::parse("script x\ngenerator T\n\nbroken line here\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("instantiation expands loops and validates names") {
    Script sc = bundled("thm_main");
    ConcreteScript cs14 = instantiate(sc, 14);
    CHECK(cs14.steps.size() == 31); // 22 singles + R2..R10
    ConcreteScript cs20 = instantiate(sc, 20);
    CHECK(cs20.steps.size() == 37); // R2..R16
    CHECK(cs14.generators[0].second == parse_word("u10 A2 C2^-1", Genus(14)));
    CHECK(cs20.generators[0].second == parse_word("u16 A2 C2^-1", Genus(20)));
    CHECK(cs14.targets.back() == parse_word("u13", Genus(14)));

    // a step whose name reads as a word is rejected
    CHECK_THROWS_AS(instantiate(Script::parse("script x\nB2 := prod(A2x) => A2 [free]\n"), 14),
                    ParseError);
    // duplicate names are rejected
    CHECK_THROWS_AS(
        instantiate(Script::parse("script x\nD1 := prod(X9) => A2 [free]\nD1 := prod(X9) => A2 [free]\n"), 14),
        ParseError);
}

TEST_CASE("thm_main verifies at genus 14 with the expected trusted base") {
    Script sc = bundled("thm_main");
    CurveTable t = default_table(Genus(14));
    ScriptReport rep = run_script(sc, 14, t);
    CHECK(rep.pass);
    CHECK(rep.exit_code() == 0);
    CHECK(rep.errors.empty());
    CHECK(rep.steps.size() == 31);

    for (const StepReport& s : rep.steps) {
        CHECK(s.verdict != Verdict::Failed);
        CHECK(s.oracle == OracleStatus::Consistent);
    }
    // spot verdicts: pure word-algebra steps verify outright, steps leaning
    // on figure-read facts are flagged
    CHECK(step(rep, "D1").verdict == Verdict::Verified);
    CHECK(step(rep, "G6").verdict == Verdict::Verified);
    CHECK(step(rep, "G3").verdict == Verdict::UsesAxiom);
    CHECK(step(rep, "D6").verdict == Verdict::UsesAxiom);
    CHECK(step(rep, "T1a").verdict == Verdict::UsesAxiom);
    // T1a consumes exactly the figure-read rotation fact
    const StepReport& t1a = step(rep, "T1a");
    CHECK(std::count(t1a.axioms.begin(), t1a.axioms.end(), "T(a1)=b1") == 1);

    std::set<std::string> expected{
        "T(a1)=b1",        "i(a2,b4)=0",      "i(a2,c2)=0",      "i(b1,b2)=0",
        "i(b1,c2)=0",      "i(b1,c3)=0",      "i(b2,c2)=1",      "i(b2,c3)=0",
        "i(b4,alpha10)=0", "i(b4,alpha13)=0", "i(b4,c2)=0",      "i(b4,gamma2)=0",
        "i(b4,gamma4)=0",  "i(b4,gamma8)=0",  "i(c2,alpha10)=0", "i(c2,alpha13)=0",
        "i(c2,c3)=0",      "i(c2,gamma4)=0",  "i(c2,gamma6)=1"};
    CHECK(axiom_set(rep) == expected);

    for (const TargetReport& tr : rep.targets) CHECK(tr.derived);
}

TEST_CASE("thm_main2 verifies at genus 13") {
    Script sc = bundled("thm_main2");
    CurveTable t = default_table(Genus(13));
    ScriptReport rep = run_script(sc, 13, t);
    CHECK(rep.pass);
    CHECK(rep.exit_code() == 0);
    std::set<std::string> expected{
        "T(a1)=b1",       "i(a2,c2)=0",      "i(b1,alpha12)=0", "i(b1,b2)=0",
        "i(b1,c2)=0",     "i(b1,c3)=0",      "i(b1,gamma4)=0",  "i(b2,c2)=1",
        "i(b2,c3)=0",     "i(c2,alpha12)=0", "i(c2,alpha9)=0",  "i(c2,c3)=0",
        "i(c2,gamma4)=0", "i(c2,gamma6)=1"};
    CHECK(axiom_set(rep) == expected);
    for (const TargetReport& tr : rep.targets) CHECK(tr.derived);
}

TEST_CASE("the genus gate rejects under min_genus before any checking") {
    Script sc = bundled("thm_main");
    CurveTable t = default_table(Genus(13));
    ScriptReport rep = run_script(sc, 13, t);
    CHECK(rep.rejected);
    CHECK(!rep.pass);
    CHECK(rep.exit_code() == 4);
    CHECK(rep.reject_reason.find("min_genus violated") != std::string::npos);
    CHECK(rep.steps.empty());
}

TEST_CASE("thm_main2 binds to genus 13: the backward-rotation step breaks elsewhere") {
    Script sc = bundled("thm_main2");
    CurveTable t = default_table(Genus(14));
    ScriptReport rep = run_script(sc, 14, t);
    CHECK(!rep.pass);
    CHECK(rep.exit_code() == 3); // the claim is genuinely false at 14
    const StepReport& e5 = step(rep, "E5");
    CHECK(e5.verdict == Verdict::Failed);
    CHECK(e5.oracle == OracleStatus::Refuted);
}

TEST_CASE("the trusted-base fingerprint is genus-independent for thm_main") {
    Script sc = bundled("thm_main");
    ScriptReport r14 = run_script(sc, 14, default_table(Genus(14)));
    ScriptReport r20 = run_script(sc, 20, default_table(Genus(20)));
    REQUIRE(r14.pass);
    REQUIRE(r20.pass);
    std::set<std::string> f14, f20;
    for (const std::string& k : r14.axioms) f14.insert(fold_genus(k, 14));
    for (const std::string& k : r20.axioms) f20.insert(fold_genus(k, 20));
    CHECK(f14 == f20);
}

TEST_CASE("a failed step cannot cascade: later steps use its claim") {
    // S1's claim is wrong (off by one rotation step); S2 consumes the claim
    // and still verifies relative to it.
    const char* text =
        "script cascade\n"
        "min_genus 5\n"
        "generator T\n"
        "generator Q := B1\n"
        "S1 := conj(T, Q) => B2 [rotation]\n"
        "S2 := inv(S1) => B2^-1 [free]\n";
    Script sc = Script::parse(text);
    ScriptReport rep = run_script(sc, 14, default_table(Genus(14)));
    CHECK(step(rep, "S1").verdict == Verdict::Failed);
    CHECK(step(rep, "S1").oracle == OracleStatus::Refuted); // T(b1) = c1, not b2
    CHECK(step(rep, "S2").verdict == Verdict::Verified);
    CHECK(step(rep, "S2").oracle == OracleStatus::Consistent);
    CHECK(!rep.pass);
    CHECK(rep.exit_code() == 3);
}

TEST_CASE("claims equal to their expression verify with no facts consumed") {
    const char* text =
        "script trivial\n"
        "min_genus 3\n"
        "generator T\n"
        "S1 := prod(T, T) => T^2 [free]\n"
        "target T\n";
    ScriptReport rep = run_script(Script::parse(text), 14, default_table(Genus(14)));
    CHECK(rep.pass);
    CHECK(step(rep, "S1").verdict == Verdict::Verified);
    CHECK(step(rep, "S1").facts.empty());
}

TEST_CASE("axiom-justified steps are accepted but still oracle-checked") {
    const char* ok =
        "script ax\n"
        "min_genus 5\n"
        "generator T\n"
        "S1 := conj(T, T^2) => T^2 [axiom i(demo)=0]\n";
    ScriptReport rep = run_script(Script::parse(ok), 14, default_table(Genus(14)));
    CHECK(step(rep, "S1").verdict == Verdict::UsesAxiom);
    CHECK(step(rep, "S1").axioms == std::vector<std::string>{"i(demo)=0"});
    CHECK(rep.pass);

    const char* bad =
        "script ax2\n"
        "min_genus 5\n"
        "generator T\n"
        "generator Q := B1\n"
        "S1 := conj(T, Q) => B2 [axiom T(b1)=b2]\n";
    ScriptReport rep2 = run_script(Script::parse(bad), 14, default_table(Genus(14)));
    CHECK(step(rep2, "S1").verdict == Verdict::UsesAxiom);
    CHECK(step(rep2, "S1").oracle == OracleStatus::Refuted);
    CHECK(!rep2.pass);
    CHECK(rep2.exit_code() == 3);
}

TEST_CASE("failed rewrites name the missing fact") {
    const char* text =
        "script stuck\n"
        "min_genus 5\n"
        "generator T\n"
        "generator Q := A2\n"
        "S1 := conj(prod(T^2, inv(T)), Q) => Gamma2 [conjugation]\n";
    // flat = T A2 T^-1, fine; now one that cannot transport:
    const char* text2 =
        "script stuck2\n"
        "min_genus 5\n"
        "generator U := u2\n"
        "generator Q := A2\n"
        "S1 := conj(U, Q) => A2 [conjugation]\n";
    ScriptReport rep = run_script(Script::parse(text), 14, default_table(Genus(14)));
    CHECK(step(rep, "S1").verdict == Verdict::Verified);

    ScriptReport rep2 = run_script(Script::parse(text2), 14, default_table(Genus(14)));
    const StepReport& s = step(rep2, "S1");
    CHECK(s.verdict == Verdict::Failed);
    CHECK(s.oracle == OracleStatus::Consistent); // u2 truly fixes [a2] mod 2
    CHECK(!s.reason.empty());
    CHECK(rep2.exit_code() == 2);
}

TEST_CASE("structural errors exit 4: unknown names and undefined curves") {
    const char* unknown =
        "script u1\n"
        "min_genus 5\n"
        "generator T\n"
        "S1 := prod(NoSuch) => T [free]\n";
    ScriptReport rep = run_script(Script::parse(unknown), 14, default_table(Genus(14)));
    CHECK(!rep.errors.empty());
    CHECK(rep.exit_code() == 4);

    const char* undefined_curve =
        "script u2\n"
        "min_genus 5\n"
        "generator T\n"
        "S1 := conj(T, B9) => B9 [free]\n";
    // B9 parses but no table at genus 14 carries it; expressions cannot
    // reference raw twist words anyway
    ScriptReport rep2 = run_script(Script::parse(undefined_curve), 14, default_table(Genus(14)));
    CHECK(!rep2.errors.empty());
    CHECK(rep2.exit_code() == 4);
}

TEST_CASE("targets: exact claims, generators, and transpositions up to rotation") {
    const char* text =
        "script tg\n"
        "min_genus 5\n"
        "generator T\n"
        "generator Q := u5\n"
        "S1 := conj(T, Q) => u6 [rotation]\n"
        "target T\n"
        "target u9\n"
        "target B1 B2^-1\n";
    ScriptReport rep = run_script(Script::parse(text), 14, default_table(Genus(14)));
    REQUIRE(rep.targets.size() == 3);
    CHECK(rep.targets[0].derived);
    CHECK(rep.targets[0].via == "T");
    CHECK(rep.targets[1].derived); // u9 via any derived transposition
    CHECK(!rep.targets[2].derived);
    CHECK(!rep.pass);
    CHECK(rep.exit_code() == 2);
}

TEST_CASE("structured rendering carries the stable fields") {
    Script sc = bundled("thm_main");
    ScriptReport rep = run_script(sc, 14, default_table(Genus(14)));
    nlohmann::json j = nlohmann::json::parse(render_structured(rep));
    CHECK(j["script"] == "thm_main");
    CHECK(j["genus"] == 14);
    CHECK(j["pass"] == true);
    CHECK(j["steps"].is_array());
    CHECK(j["steps"].size() == 31);
    const auto& s0 = j["steps"][0];
    CHECK(s0.contains("step"));
    CHECK(s0.contains("verdict"));
    CHECK(s0.contains("oracle"));
    CHECK(s0.contains("claimed"));
    CHECK(s0.contains("facts"));
    CHECK(s0.contains("axioms"));
    CHECK(j["targets"].size() == 4);
    CHECK(j["axioms"].size() == 19);
    // verdict and oracle tokens
    CHECK(s0["verdict"] == "verified");
    CHECK(s0["oracle"] == "consistent-mod2");
}

TEST_CASE("text rendering shows verdict tokens and the result line") {
    Script sc = bundled("thm_main");
    ScriptReport rep = run_script(sc, 14, default_table(Genus(14)));
    std::string text = render_text(rep);
    CHECK(text.find("result: PASS") != std::string::npos);
    CHECK(text.find("uses-axiom") != std::string::npos);
    CHECK(text.find("consistent-mod2") != std::string::npos);
    CHECK(text.find("figure-axiom facts consumed (19):") != std::string::npos);
}

TEST_CASE("check_nonabelian certifies T and the seed generator at genus 14") {
    CurveTable t = default_table(Genus(14));
    Word T = parse_word("T", Genus(14));
    Word g1 = parse_word("u10 A2 C2^-1", Genus(14));
    CHECK(check_nonabelian(T, g1, t));
    CHECK(!check_nonabelian(T, T, t));
    CHECK(!check_nonabelian(T, parse_word("T^5", Genus(14)), t));
}

TEST_CASE("mutating a verified claim is caught") {
    Script sc = bundled("thm_main");
    CurveTable t = default_table(Genus(14));
    ConcreteScript cs = instantiate(sc, 14);

    // swap A2 for Gamma2 in the G7 claim: homology refutes it
    for (ConcreteStep& st : cs.steps) {
        if (st.name == "G7") {
            REQUIRE(st.claimed.letters[0].curve == CurveId{Family::A, 2});
            st.claimed.letters[0].curve = {Family::Gamma, 2};
        }
    }
    ScriptReport rep = run_script(cs, t);
    const StepReport& g7 = step(rep, "G7");
    CHECK(g7.oracle == OracleStatus::Refuted);
    CHECK(!rep.pass);
    CHECK(rep.exit_code() == 3);

    // flip one exponent: homology cannot see twist direction, but the
    // rewriting comparison fails
    ConcreteScript cs2 = instantiate(sc, 14);
    for (ConcreteStep& st : cs2.steps)
        if (st.name == "D1") st.claimed.letters[1].exponent = 1;
    ScriptReport rep2 = run_script(cs2, t);
    CHECK(step(rep2, "D1").verdict == Verdict::Failed);
    CHECK(rep2.exit_code() >= 2);
}
