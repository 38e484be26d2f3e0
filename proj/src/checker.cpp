#include "crosscap/checker.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace crosscap {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool starts_with(const std::string& s, const std::string& p) {
    return s.size() >= p.size() && s.compare(0, p.size(), p) == 0;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("script line " + std::to_string(line) + ": " + msg);
}

bool is_plain_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Identifier template: a plain identifier with `{...}` index groups allowed
// after the first character, e.g. "R{i}".
bool is_identifier_template(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '{') {
            size_t close = s.find('}', i);
            if (close == std::string::npos) return false;
            i = close;
            continue;
        }
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

Expr parse_expr(const std::string& s, size_t& pos, int line);

Expr parse_call(Expr::Kind kind, const std::string& kw, const std::string& s, size_t& pos,
                int line) {
    Expr e;
    e.kind = kind;
    skip_ws(s, pos);
    if (pos >= s.size() || s[pos] != '(') fail(line, "expected '(' after " + kw);
    ++pos;
    while (true) {
        e.args.push_back(parse_expr(s, pos, line));
        skip_ws(s, pos);
        if (pos >= s.size()) fail(line, "unterminated argument list for " + kw);
        if (s[pos] == ',') {
            ++pos;
            continue;
        }
        if (s[pos] == ')') {
            ++pos;
            break;
        }
        fail(line, "expected ',' or ')' in " + kw + " arguments");
    }
    size_t n = e.args.size();
    if (kind == Expr::Kind::Inv && n != 1) fail(line, "inv takes exactly one argument");
    if ((kind == Expr::Kind::Conj || kind == Expr::Kind::Sandwich) && n != 2)
        fail(line, kw + " takes exactly two arguments");
    if (kind == Expr::Kind::Prod && n < 1) fail(line, "prod needs at least one argument");
    return e;
}

Expr parse_expr(const std::string& s, size_t& pos, int line) {
    skip_ws(s, pos);
    struct Kw {
        const char* word;
        Expr::Kind kind;
    };
    static const Kw kws[] = {{"inv", Expr::Kind::Inv},
                             {"prod", Expr::Kind::Prod},
                             {"conj", Expr::Kind::Conj},
                             {"sandwich", Expr::Kind::Sandwich}};
    for (const Kw& kw : kws) {
        std::string w = kw.word;
        if (s.compare(pos, w.size(), w) == 0) {
            size_t after = pos + w.size();
            size_t probe = after;
            skip_ws(s, probe);
            if (probe < s.size() && s[probe] == '(') {
                pos = after;
                return parse_call(kw.kind, w, s, pos, line);
            }
        }
    }
    size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ')') ++pos;
    std::string chunk = trim(s.substr(start, pos - start));
    if (chunk.empty()) fail(line, "empty expression");
    Expr e;
    e.text = chunk;
    // Identifier-shaped chunks are name references; the Name evaluation falls
    // back to rotation-word literals ("T") for scripts that use T inline.
    e.kind = is_identifier_template(chunk) ? Expr::Kind::Name : Expr::Kind::Literal;
    return e;
}

SourceStep parse_step_line(const std::string& line, int lineno) {
    SourceStep st;
    st.line = lineno;
    size_t def = line.find(":=");
    if (def == std::string::npos) fail(lineno, "expected NAME := EXPR => WORD [justification]");
    st.name = trim(line.substr(0, def));
    if (!is_identifier_template(st.name)) fail(lineno, "invalid step name '" + st.name + "'");
    std::string rest = line.substr(def + 2);
    size_t arrow = rest.find("=>");
    if (arrow == std::string::npos) fail(lineno, "expected '=>' after the step expression");
    std::string expr_text = trim(rest.substr(0, arrow));
    if (expr_text.empty()) fail(lineno, "empty step expression");
    size_t pos = 0;
    st.expr = parse_expr(expr_text, pos, lineno);
    skip_ws(expr_text, pos);
    if (pos != expr_text.size()) fail(lineno, "trailing text after expression: '" + expr_text.substr(pos) + "'");

    std::string tail = trim(rest.substr(arrow + 2));
    size_t lb = tail.find('[');
    if (lb == std::string::npos) fail(lineno, "expected [justification] after the claimed word");
    size_t rb = tail.find(']', lb);
    if (rb == std::string::npos) fail(lineno, "unterminated [justification]");
    st.claimed = trim(tail.substr(0, lb));
    if (st.claimed.empty()) fail(lineno, "empty claimed word");
    std::string just = trim(tail.substr(lb + 1, rb - lb - 1));
    if (just == "free" || just == "rotation" || just == "conjugation" || just == "telescoping") {
        st.justification = just;
    } else if (just == "axiom" || starts_with(just, "axiom ")) {
        st.justification = "axiom";
        st.axiom_ref = trim(just.size() > 5 ? just.substr(5) : "");
        if (st.axiom_ref.empty()) fail(lineno, "axiom justification needs a fact reference");
    } else {
        fail(lineno, "unknown justification '" + just + "'");
    }

    std::istringstream ftoks(tail.substr(rb + 1));
    std::string tok;
    while (ftoks >> tok) {
        if (tok.empty() || tok[0] != '!') fail(lineno, "unexpected trailing token '" + tok + "'");
        std::string flag = tok.substr(1);
        if (flag != "inverse-normalization" && flag != "reconstruction")
            fail(lineno, "unknown flag '!" + flag + "'");
        st.flags.push_back(flag);
    }
    return st;
}

} // namespace

Script Script::parse(const std::string& text) {
    Script sc;
    bool have_name = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (starts_with(line, "script ")) {
            if (have_name) fail(lineno, "duplicate 'script' header");
            sc.name = trim(line.substr(7));
            if (!is_plain_identifier(sc.name)) fail(lineno, "invalid script name '" + sc.name + "'");
            have_name = true;
        } else if (starts_with(line, "min_genus ")) {
            std::string v = trim(line.substr(10));
            size_t used = 0;
            int mg = 0;
            try {
                mg = std::stoi(v, &used);
            } catch (const std::exception&) {
                fail(lineno, "min_genus expects an integer, got '" + v + "'");
            }
            if (used != v.size()) fail(lineno, "min_genus expects an integer, got '" + v + "'");
            if (mg < 3) fail(lineno, "min_genus must be at least 3");
            sc.min_genus = mg;
        } else if (line == "generator T") {
            sc.generator_T = true;
        } else if (starts_with(line, "generator ")) {
            std::string rest = trim(line.substr(10));
            size_t def = rest.find(":=");
            if (def == std::string::npos) fail(lineno, "expected 'generator NAME := WORD'");
            std::string name = trim(rest.substr(0, def));
            std::string word = trim(rest.substr(def + 2));
            if (!is_identifier_template(name)) fail(lineno, "invalid generator name '" + name + "'");
            if (word.empty()) fail(lineno, "empty generator word");
            sc.generators.emplace_back(name, word);
        } else if (starts_with(line, "foreach ")) {
            std::string rest = line.substr(8);
            size_t eq = rest.find('=');
            if (eq == std::string::npos) fail(lineno, "expected 'foreach VAR = LO..HI :: STEP'");
            SourceForeach fe;
            fe.line = lineno;
            fe.var = trim(rest.substr(0, eq));
            if (!is_plain_identifier(fe.var)) fail(lineno, "invalid foreach variable '" + fe.var + "'");
            size_t sep = rest.find("::", eq);
            if (sep == std::string::npos) fail(lineno, "expected '::' before the foreach body");
            std::string range = trim(rest.substr(eq + 1, sep - eq - 1));
            size_t dots = range.find("..");
            if (dots == std::string::npos) fail(lineno, "expected 'LO..HI' range");
            fe.lo = trim(range.substr(0, dots));
            fe.hi = trim(range.substr(dots + 2));
            if (fe.lo.empty() || fe.hi.empty()) fail(lineno, "expected 'LO..HI' range");
            fe.body = parse_step_line(trim(rest.substr(sep + 2)), lineno);
            sc.items.push_back(std::move(fe));
        } else if (starts_with(line, "target ")) {
            std::string t = trim(line.substr(7));
            if (t.empty()) fail(lineno, "empty target word");
            sc.targets.push_back(t);
        } else {
            sc.items.push_back(parse_step_line(line, lineno));
        }
    }
    if (!have_name) throw ParseError("script: missing 'script <name>' header");
    return sc;
}

int eval_index_expr(const std::string& text, const std::map<std::string, int>& vars) {
    size_t pos = 0;
    const std::string s = text;
    int total = 0;
    bool first = true;
    skip_ws(s, pos);
    if (pos >= s.size()) throw ParseError("empty index expression");
    while (pos < s.size()) {
        int sign = 1;
        if (!first) {
            if (s[pos] == '+') {
                ++pos;
            } else if (s[pos] == '-') {
                sign = -1;
                ++pos;
            } else {
                throw ParseError("expected '+' or '-' in index expression '" + text + "'");
            }
            skip_ws(s, pos);
        } else if (s[pos] == '-') {
            sign = -1;
            ++pos;
            skip_ws(s, pos);
        }
        if (pos >= s.size()) throw ParseError("dangling operator in index expression '" + text + "'");
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            int v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                v = v * 10 + (s[pos] - '0');
                ++pos;
            }
            total += sign * v;
        } else if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
            std::string name;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                name.push_back(s[pos]);
                ++pos;
            }
            auto it = vars.find(name);
            if (it == vars.end())
                throw ParseError("unbound index variable '" + name + "' in '" + text + "'");
            total += sign * it->second;
        } else {
            throw ParseError("unexpected character '" + std::string(1, s[pos]) +
                             "' in index expression '" + text + "'");
        }
        first = false;
        skip_ws(s, pos);
    }
    return total;
}

std::string substitute_indices(const std::string& text,
                               const std::map<std::string, int>& vars) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '{') {
            size_t close = text.find('}', i);
            if (close == std::string::npos)
                throw ParseError("unmatched '{' in '" + text + "'");
            out += std::to_string(eval_index_expr(text.substr(i + 1, close - i - 1), vars));
            i = close;
        } else if (c == '}') {
            throw ParseError("unmatched '}' in '" + text + "'");
        } else {
            out.push_back(c);
        }
    }
    return out;
}

namespace {

Expr substitute_expr(const Expr& e, const std::map<std::string, int>& vars) {
    Expr out;
    out.kind = e.kind;
    out.text = substitute_indices(e.text, vars);
    out.args.reserve(e.args.size());
    for (const Expr& a : e.args) out.args.push_back(substitute_expr(a, vars));
    return out;
}

void validate_fresh_name(const std::string& name, Genus g, std::set<std::string>& names,
                         int line) {
    if (!is_plain_identifier(name)) fail(line, "invalid name '" + name + "'");
    bool reads_as_word = true;
    try {
        parse_word(name, g);
    } catch (const ParseError&) {
        reads_as_word = false;
    }
    if (reads_as_word) fail(line, "name '" + name + "' reads as a word; pick another");
    if (!names.insert(name).second) fail(line, "duplicate name '" + name + "'");
}

} // namespace

ConcreteScript instantiate(const Script& script, int genus) {
    Genus g(genus);
    ConcreteScript cs;
    cs.name = script.name;
    cs.min_genus = script.min_genus;
    cs.genus = genus;
    cs.generator_T = script.generator_T;

    const std::map<std::string, int> base{{"g", genus}};
    std::set<std::string> names;
    if (script.generator_T) names.insert("T");

    for (const auto& [name_t, word_t] : script.generators) {
        std::string name = substitute_indices(name_t, base);
        validate_fresh_name(name, g, names, 0);
        cs.generators.emplace_back(name, parse_word(substitute_indices(word_t, base), g));
    }

    auto expand = [&](const SourceStep& st, const std::map<std::string, int>& vars) {
        ConcreteStep c;
        c.name = substitute_indices(st.name, vars);
        validate_fresh_name(c.name, g, names, st.line);
        c.expr = substitute_expr(st.expr, vars);
        std::string claimed = substitute_indices(st.claimed, vars);
        try {
            c.claimed = parse_word(claimed, g);
        } catch (const ParseError& e) {
            fail(st.line, "claimed word '" + claimed + "': " + e.what());
        }
        c.justification = st.justification;
        c.axiom_ref = st.axiom_ref;
        c.flags = st.flags;
        c.line = st.line;
        cs.steps.push_back(std::move(c));
    };

    for (const auto& item : script.items) {
        if (std::holds_alternative<SourceStep>(item)) {
            expand(std::get<SourceStep>(item), base);
        } else {
            const SourceForeach& fe = std::get<SourceForeach>(item);
            int lo = 0, hi = 0;
            try {
                lo = eval_index_expr(fe.lo, base);
                hi = eval_index_expr(fe.hi, base);
            } catch (const ParseError& e) {
                fail(fe.line, e.what());
            }
            for (int iv = lo; iv <= hi; ++iv) {
                std::map<std::string, int> vars = base;
                vars[fe.var] = iv;
                expand(fe.body, vars);
            }
        }
    }

    for (const std::string& t : script.targets) {
        std::string text = substitute_indices(t, base);
        cs.target_texts.push_back(text);
        cs.targets.push_back(parse_word(text, g));
    }
    return cs;
}

std::string verdict_token(Verdict v) {
    switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::UsesAxiom: return "uses-axiom";
    case Verdict::Failed: return "failed";
    }
    return "failed";
}

std::string oracle_token(OracleStatus o) {
    return o == OracleStatus::Consistent ? "consistent-mod2" : "refuted-mod2";
}

namespace {

struct Env {
    std::vector<std::pair<std::string, Word>> entries;
    std::map<std::string, size_t> index;

    void define(const std::string& name, const Word& w) {
        index[name] = entries.size();
        entries.emplace_back(name, w);
    }
    const Word* find(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? nullptr : &entries[it->second].second;
    }
};

Word eval_expr(const Expr& e, const Env& env, Genus g) {
    switch (e.kind) {
    case Expr::Kind::Name: {
        if (const Word* w = env.find(e.text)) return *w;
        std::optional<Word> as_word;
        try {
            as_word = parse_word(e.text, g);
        } catch (const ParseError&) {
        }
        if (as_word) {
            bool rotation_only = true;
            for (const Letter& l : as_word->letters)
                if (l.kind != Letter::Kind::Rotation) rotation_only = false;
            if (rotation_only) return *as_word;
            throw ParseError("expressions may only reference derived names and rotation "
                             "words; '" +
                             e.text + "' is neither");
        }
        throw ParseError("unknown name '" + e.text + "'");
    }
    case Expr::Kind::Literal: {
        Word w = parse_word(e.text, g);
        for (const Letter& l : w.letters)
            if (l.kind != Letter::Kind::Rotation)
                throw ParseError("expression literals must be rotation words, got '" + e.text +
                                 "'");
        return w;
    }
    case Expr::Kind::Inv:
        return invert(eval_expr(e.args[0], env, g));
    case Expr::Kind::Prod: {
        Word acc = eval_expr(e.args[0], env, g);
        for (size_t i = 1; i < e.args.size(); ++i)
            acc = multiply(acc, eval_expr(e.args[i], env, g));
        return acc;
    }
    case Expr::Kind::Conj:
        return conjugate(eval_expr(e.args[0], env, g), eval_expr(e.args[1], env, g));
    case Expr::Kind::Sandwich:
        return sandwich(eval_expr(e.args[0], env, g), eval_expr(e.args[1], env, g));
    }
    throw ParseError("corrupt expression");
}

} // namespace

ScriptReport run_script(const Script& script, int genus, const CurveTable& table) {
    if (genus < script.min_genus) {
        ScriptReport rep;
        rep.script = script.name;
        rep.genus = genus;
        rep.min_genus = script.min_genus;
        rep.rejected = true;
        rep.reject_reason = "min_genus violated: script '" + script.name + "' requires genus >= " +
                            std::to_string(script.min_genus) + ", got " + std::to_string(genus);
        return rep;
    }

    ConcreteScript cs;
    try {
        cs = instantiate(script, genus);
    } catch (const std::exception& e) {
        ScriptReport rep;
        rep.script = script.name;
        rep.genus = genus;
        rep.min_genus = script.min_genus;
        rep.errors.push_back(e.what());
        return rep;
    }
    return run_script(cs, table);
}

ScriptReport run_script(const ConcreteScript& cs, const CurveTable& table) {
    ScriptReport rep;
    rep.script = cs.name;
    rep.genus = cs.genus;
    rep.min_genus = cs.min_genus;

    if (cs.genus < cs.min_genus) {
        rep.rejected = true;
        rep.reject_reason = "min_genus violated: script '" + cs.name + "' requires genus >= " +
                            std::to_string(cs.min_genus) + ", got " + std::to_string(cs.genus);
        return rep;
    }
    if (table.genus().value != cs.genus) {
        rep.errors.push_back("table genus " + std::to_string(table.genus().value) +
                             " does not match requested genus " + std::to_string(cs.genus));
        return rep;
    }

    Rewriter rw(table);
    Genus g = table.genus();
    Env env;
    if (cs.generator_T) env.define("T", Word{{Letter::rotation(1)}});
    for (const auto& [name, w] : cs.generators) env.define(name, w);

    for (const ConcreteStep& st : cs.steps) {
        StepReport sr;
        sr.name = st.name;
        sr.justification = st.justification;
        sr.axiom_ref = st.axiom_ref;
        sr.flags = st.flags;
        sr.claimed = st.claimed;

        Word flat;
        OracleResult oc;
        try {
            flat = eval_expr(st.expr, env, g);
            // The homology oracle runs on every step, including axiom steps:
            // a claim it refutes is wrong no matter how it is justified.
            // resolve_curve throws here when a claim names a curve the table
            // does not carry at this genus; that is a structural error.
            oc = oracle_check(flat, st.claimed, table);
        } catch (const std::exception& e) {
            rep.errors.push_back("step " + st.name + ": " + e.what());
            break;
        }
        sr.flat = flat;
        sr.oracle = oc.consistent ? OracleStatus::Consistent : OracleStatus::Refuted;
        sr.witness = oc.witness;

        if (st.justification == "axiom") {
            sr.verdict = Verdict::UsesAxiom;
            sr.axioms.push_back(st.axiom_ref);
            sr.normal = st.claimed;
        } else if (flat == st.claimed) {
            sr.verdict = Verdict::Verified;
            sr.normal = flat;
        } else {
            FactLog log;
            std::string obstruction;
            Word normal = rw.normalize(flat, &log, &obstruction);
            sr.normal = normal;
            for (const FactRef& f : log.used) {
                sr.facts.push_back(f.key);
                if (f.prov == Provenance::FigureAxiom) sr.axioms.push_back(f.key);
            }
            if (normal == st.claimed) {
                sr.verdict = sr.axioms.empty() ? Verdict::Verified : Verdict::UsesAxiom;
            } else if (!obstruction.empty()) {
                sr.verdict = Verdict::Failed;
                sr.reason = obstruction;
            } else {
                sr.verdict = Verdict::Failed;
                sr.reason = "normal form mismatch: expression reduces to '" + print_word(normal) +
                            "', claim is '" + print_word(st.claimed) + "'";
            }
        }
        rep.steps.push_back(std::move(sr));
        // The claim enters the environment even when the step failed, so one
        // bad step cannot cascade into spurious failures downstream.
        env.define(st.name, st.claimed);
    }

    bool structural = !rep.errors.empty();

    for (size_t i = 0; i < cs.targets.size(); ++i) {
        TargetReport tr;
        tr.text = cs.target_texts[i];
        tr.word = cs.targets[i];
        for (const auto& [name, w] : env.entries) {
            if (w == tr.word) {
                tr.derived = true;
                tr.via = name;
                break;
            }
        }
        if (!tr.derived && tr.word.size() == 1 &&
            tr.word.letters[0].kind == Letter::Kind::Transposition &&
            tr.word.letters[0].exponent == 1) {
            // Crosscap transpositions are all conjugate under powers of T, so
            // deriving any one of them derives the target up to rotation.
            for (const auto& [name, w] : env.entries) {
                if (w.size() == 1 && w.letters[0].kind == Letter::Kind::Transposition &&
                    w.letters[0].exponent == 1) {
                    tr.derived = true;
                    tr.via = name;
                    break;
                }
            }
        }
        rep.targets.push_back(std::move(tr));
    }

    std::set<std::string> axioms;
    bool all_ok = !structural;
    bool refuted = false;
    for (const StepReport& s : rep.steps) {
        if (s.verdict == Verdict::Failed) all_ok = false;
        if (s.oracle == OracleStatus::Refuted) refuted = true;
        for (const std::string& a : s.axioms) axioms.insert(a);
    }
    rep.axioms.assign(axioms.begin(), axioms.end());
    for (const TargetReport& t : rep.targets)
        if (!t.derived) all_ok = false;
    rep.pass = all_ok && !refuted;
    return rep;
}

int ScriptReport::exit_code() const {
    if (rejected || !errors.empty()) return 4;
    for (const StepReport& s : steps)
        if (s.oracle == OracleStatus::Refuted) return 3;
    if (!pass) return 2;
    return 0;
}

bool check_nonabelian(const Word& a, const Word& b, const CurveTable& table) {
    F2Matrix ma = word_matrix(a, table);
    F2Matrix mb = word_matrix(b, table);
    return !(ma * mb == mb * ma);
}

std::string render_text(const ScriptReport& report, bool verbose) {
    std::ostringstream os;
    os << "script " << report.script << "\n";
    os << "genus " << report.genus << " (min_genus " << report.min_genus << ")\n";
    if (report.rejected) {
        os << "rejected: " << report.reject_reason << "\n";
        os << "result: FAIL\n";
        return os.str();
    }
    for (const std::string& e : report.errors) os << "error: " << e << "\n";
    for (const StepReport& s : report.steps) {
        os << "  " << s.name << ": " << verdict_token(s.verdict) << " [" << s.justification;
        if (!s.axiom_ref.empty()) os << " " << s.axiom_ref;
        os << "] oracle=" << oracle_token(s.oracle);
        for (const std::string& f : s.flags) os << " !" << f;
        os << "\n";
        if (s.verdict == Verdict::Failed) os << "    reason: " << s.reason << "\n";
        if (s.oracle == OracleStatus::Refuted && s.witness)
            os << "    witness: " << s.witness->str() << "\n";
        if (verbose) {
            os << "    claimed: " << print_word(s.claimed) << "\n";
            os << "    flat:    " << print_word(s.flat) << "\n";
            os << "    normal:  " << print_word(s.normal) << "\n";
            if (!s.facts.empty()) {
                os << "    facts:";
                for (const std::string& f : s.facts) os << " " << f;
                os << "\n";
            }
        } else if (!s.axioms.empty()) {
            os << "    axioms:";
            for (const std::string& a : s.axioms) os << " " << a;
            os << "\n";
        }
    }
    os << "targets:\n";
    for (const TargetReport& t : report.targets) {
        os << "  " << t.text << ": "
           << (t.derived ? "derived via " + t.via : std::string("not derived")) << "\n";
    }
    os << "figure-axiom facts consumed (" << report.axioms.size() << "):\n";
    for (const std::string& a : report.axioms) os << "  " << a << "\n";
    os << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string render_structured(const ScriptReport& report) {
    nlohmann::json j;
    j["script"] = report.script;
    j["genus"] = report.genus;
    j["min_genus"] = report.min_genus;
    j["pass"] = report.pass;
    j["rejected"] = report.rejected;
    if (report.rejected) j["reject_reason"] = report.reject_reason;
    j["errors"] = report.errors;
    j["steps"] = nlohmann::json::array();
    for (const StepReport& s : report.steps) {
        nlohmann::json js;
        js["step"] = s.name;
        js["verdict"] = verdict_token(s.verdict);
        js["oracle"] = oracle_token(s.oracle);
        js["justification"] = s.justification;
        if (!s.axiom_ref.empty()) js["axiom_ref"] = s.axiom_ref;
        js["claimed"] = print_word(s.claimed);
        js["flat"] = print_word(s.flat);
        js["normal"] = print_word(s.normal);
        js["flags"] = s.flags;
        js["facts"] = s.facts;
        js["axioms"] = s.axioms;
        if (s.verdict == Verdict::Failed) js["reason"] = s.reason;
        if (s.witness) js["witness"] = s.witness->str();
        j["steps"].push_back(std::move(js));
    }
    j["targets"] = nlohmann::json::array();
    for (const TargetReport& t : report.targets) {
        nlohmann::json jt;
        jt["word"] = t.text;
        jt["derived"] = t.derived;
        if (t.derived) jt["via"] = t.via;
        j["targets"].push_back(std::move(jt));
    }
    j["axioms"] = report.axioms;
    return j.dump(2) + "\n";
}

} // namespace crosscap
