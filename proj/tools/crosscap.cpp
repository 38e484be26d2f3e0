#include "crosscap/checker.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace {

using namespace crosscap;

constexpr int kExitData = 4;
constexpr int kExitStep = 2;
constexpr int kExitStrict = 5;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Loads the requested table, or the generated default when no path is given.
// User-supplied tables are validated before use. Returns nullopt after
// printing a diagnostic (data error).
std::optional<CurveTable> load_table(int genus, const std::string& path) {
    Genus g(genus);
    if (path.empty()) return default_table(g);
    std::optional<std::string> text = read_file(path);
    if (!text) {
        std::cerr << "error: cannot read table file '" << path << "'\n";
        return std::nullopt;
    }
    try {
        CurveTable t = parse_table(*text);
        if (t.genus() != g) {
            std::cerr << "error: table file is for genus " << t.genus().value
                      << ", requested genus " << genus << "\n";
            return std::nullopt;
        }
        std::vector<TableViolation> bad = validate_table(t);
        if (!bad.empty()) {
            for (const TableViolation& v : bad) std::cerr << "table violation: " << v.what << "\n";
            return std::nullopt;
        }
        return t;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::nullopt;
    }
}

int cmd_verify(const std::string& script_arg, int genus, const std::string& table_path,
               const std::string& format, bool strict_axioms, bool verbose) {
    std::string text;
    if (std::optional<std::string> b = bundled_script(script_arg)) {
        text = *b;
    } else {
        std::optional<std::string> f = read_file(script_arg);
        if (!f) {
            std::cerr << "error: '" << script_arg
                      << "' is neither a bundled script nor a readable file; bundled:";
            for (const std::string& n : bundled_script_names()) std::cerr << " " << n;
            std::cerr << "\n";
            return kExitData;
        }
        text = *f;
    }

    Script script;
    try {
        script = Script::parse(text);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }

    std::optional<CurveTable> table = load_table(genus, table_path);
    if (!table) return kExitData;

    ScriptReport rep = run_script(script, genus, *table);
    if (format == "structured") {
        std::cout << render_structured(rep);
    } else {
        std::cout << render_text(rep, verbose);
    }
    int code = rep.exit_code();
    if (code == 0 && strict_axioms && !rep.axioms.empty()) {
        std::cerr << "strict-axioms: run passed but consumed " << rep.axioms.size()
                  << " figure-axiom fact(s)\n";
        return kExitStrict;
    }
    return code;
}

int cmd_act(const std::string& word_text, const std::string& curve_text, int genus,
            const std::string& table_path) {
    std::optional<CurveTable> table = load_table(genus, table_path);
    if (!table) return kExitData;
    Genus g(genus);
    Word w;
    CurveId start{Family::A, 0};
    try {
        w = parse_word(word_text, g);
        Word c = parse_word(curve_text, g);
        if (c.size() != 1 || c.letters[0].kind != Letter::Kind::Twist ||
            c.letters[0].exponent != 1)
            throw ParseError("expected a single curve name, got '" + curve_text + "'");
        start = c.letters[0].curve;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    Rewriter rw(*table);
    ActionOutcome out = rw.act(w, start);
    if (!out.known()) {
        std::cout << "unknown: " << out.missing << "\n";
        return kExitStep;
    }
    std::cout << out.image->curve.twist_token() << " (" << (out.image->sign > 0 ? "+1" : "-1")
              << ")\n";
    return 0;
}

int cmd_matrix(const std::string& word_text, int genus, const std::string& table_path,
               const std::string& format) {
    std::optional<CurveTable> table = load_table(genus, table_path);
    if (!table) return kExitData;
    Word w;
    try {
        w = parse_word(word_text, Genus(genus));
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    F2Matrix m = word_matrix(w, *table);
    if (format == "structured") {
        std::cout << "{\"genus\":" << genus << ",\"word\":\"" << print_word(w) << "\",\"rows\":[";
        for (int r = 1; r <= m.dim; ++r) {
            if (r > 1) std::cout << ",";
            std::cout << "\"" << m.rows[static_cast<size_t>(r - 1)].str() << "\"";
        }
        std::cout << "]}\n";
    } else {
        std::cout << m.str();
    }
    return 0;
}

int cmd_facts(int genus, const std::string& table_path, const std::string& provenance) {
    std::optional<CurveTable> table = load_table(genus, table_path);
    if (!table) return kExitData;
    std::optional<Provenance> filter;
    if (!provenance.empty()) {
        filter = parse_provenance(provenance);
        if (!filter) {
            std::cerr << "error: unknown provenance '" << provenance
                      << "' (expected PAPER, FIGURE-AXIOM, or DERIVED-PATTERN)\n";
            return kExitData;
        }
    }
    std::set<std::string> seen; // both stored directions share one key
    auto emit = [&filter, &seen](const FactRef& r) {
        if (filter && r.prov != *filter) return;
        if (!seen.insert(r.key).second) return;
        std::cout << r.key << "  " << provenance_token(r.prov) << "\n";
    };
    for (const IntersectionFact& f : table->intersections()) emit(fact_ref(f));
    for (const ActionFact& f : table->actions()) emit(fact_ref(f));
    return 0;
}

int cmd_table(int genus) {
    std::cout << serialize_table(default_table(Genus(genus)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"crosscap — word-level verification toolkit for the circular "
                 "crosscap model of Mod(N_g)"};
    app.require_subcommand(1);

    int genus = 0;
    std::string table_path;
    std::string format = "text";
    std::string script_arg;
    std::string word_text;
    std::string curve_text;
    bool strict_axioms = false;
    bool verbose = false;

    auto add_genus = [&genus](CLI::App* cmd) {
        cmd->add_option("--genus", genus, "genus of N_g (>= 3)")->required();
    };
    auto add_table = [&table_path](CLI::App* cmd) {
        cmd->add_option("--table", table_path, "curve table file (default: generated)");
    };
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "structured"}));
    };

    CLI::App* verify = app.add_subcommand("verify", "check a derivation script");
    verify->add_option("--script", script_arg, "bundled script name or file path")->required();
    add_genus(verify);
    add_table(verify);
    add_format(verify);
    verify->add_flag("--strict-axioms", strict_axioms,
                     "exit 5 when the run passes but consumed figure-axiom facts");
    verify->add_flag("-v,--verbose", verbose, "per-step words and consumed facts");

    CLI::App* act = app.add_subcommand("act", "image of a curve under a word");
    act->add_option("word", word_text, "acting word, e.g. \"T^3\"")->required();
    act->add_option("curve", curve_text, "curve name, e.g. A2")->required();
    add_genus(act);
    add_table(act);

    CLI::App* matrix = app.add_subcommand("matrix", "mod-2 homology matrix of a word");
    matrix->add_option("word", word_text, "word, e.g. \"u10 A2 C2^-1\"")->required();
    add_genus(matrix);
    add_table(matrix);
    add_format(matrix);

    std::string provenance;
    CLI::App* facts = app.add_subcommand("facts", "list every fact with its provenance");
    add_genus(facts);
    add_table(facts);
    facts->add_option("--provenance", provenance,
                      "only facts with this standing (PAPER, FIGURE-AXIOM, DERIVED-PATTERN)");

    CLI::App* table = app.add_subcommand("table", "print the generated table");
    add_genus(table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message / help text
        return e.get_name() == "CallForHelp" ? 0 : kExitData;
    }

    try {
        if (app.got_subcommand(verify))
            return cmd_verify(script_arg, genus, table_path, format, strict_axioms, verbose);
        if (app.got_subcommand(act)) return cmd_act(word_text, curve_text, genus, table_path);
        if (app.got_subcommand(matrix)) return cmd_matrix(word_text, genus, table_path, format);
        if (app.got_subcommand(facts)) return cmd_facts(genus, table_path, provenance);
        if (app.got_subcommand(table)) return cmd_table(genus);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitData;
}
