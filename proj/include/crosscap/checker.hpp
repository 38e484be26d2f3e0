#pragma once

#include <crosscap/action.hpp>
#include <crosscap/homology.hpp>
#include <crosscap/surface.hpp>
#include <crosscap/words.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crosscap {

// ---------------------------------------------------------------------------
// Script source model (genus-generic).
//
// A script is a list of named derivation steps over a handful of word-level
// combinators. Index placeholders `{...}` (additive expressions over integer
// literals, `g`, and foreach variables) are substituted at instantiation
// time, once a concrete genus is chosen.
// ---------------------------------------------------------------------------

struct Expr {
    enum class Kind { Name, Literal, Inv, Prod, Conj, Sandwich };
    Kind kind = Kind::Name;
    std::string text;       // Name: the identifier; Literal: raw word text
    std::vector<Expr> args; // Inv: 1, Conj/Sandwich: 2, Prod: >= 1
};

struct SourceStep {
    std::string name;          // may contain {...}
    Expr expr;
    std::string claimed;       // raw claimed word text, may contain {...}
    std::string justification; // free | rotation | conjugation | telescoping | axiom
    std::string axiom_ref;     // nonempty iff justification == "axiom"
    std::vector<std::string> flags;
    int line = 0;
};

struct SourceForeach {
    std::string var;
    std::string lo; // additive index expression, e.g. "2"
    std::string hi; // additive index expression, e.g. "g-4"
    SourceStep body;
    int line = 0;
};

struct Script {
    std::string name;
    int min_genus = 3;
    bool generator_T = false;
    std::vector<std::pair<std::string, std::string>> generators; // name -> word text
    std::vector<std::variant<SourceStep, SourceForeach>> items;
    std::vector<std::string> targets; // raw word texts, may contain {...}

    // Parses the script text. Throws ParseError with a line-prefixed message.
    static Script parse(const std::string& text);
};

// Evaluates an additive index expression ("g-4", "i+1", "3") over the given
// variable bindings. Throws ParseError on malformed input or unbound names.
int eval_index_expr(const std::string& text, const std::map<std::string, int>& vars);

// Replaces every `{expr}` occurrence in `text` by the decimal value of the
// expression. Throws ParseError on malformed or unbound expressions.
std::string substitute_indices(const std::string& text,
                               const std::map<std::string, int>& vars);

// ---------------------------------------------------------------------------
// Instantiation at a concrete genus.
// ---------------------------------------------------------------------------

struct ConcreteStep {
    std::string name;
    Expr expr; // index placeholders already substituted
    Word claimed;
    std::string justification;
    std::string axiom_ref;
    std::vector<std::string> flags;
    int line = 0;
};

struct ConcreteScript {
    std::string name;
    int min_genus = 3;
    int genus = 3;
    bool generator_T = false;
    std::vector<std::pair<std::string, Word>> generators;
    std::vector<ConcreteStep> steps;
    std::vector<std::string> target_texts;
    std::vector<Word> targets;
};

// Expands foreach blocks, substitutes indices, parses all words, and
// validates names (a step name must not itself read as a word). Throws
// ParseError on any structural problem.
ConcreteScript instantiate(const Script& script, int genus);

// ---------------------------------------------------------------------------
// Verification reports.
// ---------------------------------------------------------------------------

enum class Verdict { Verified, UsesAxiom, Failed };
enum class OracleStatus { Consistent, Refuted };

std::string verdict_token(Verdict v);      // verified | uses-axiom | failed
std::string oracle_token(OracleStatus o);  // consistent-mod2 | refuted-mod2

struct StepReport {
    std::string name;
    Verdict verdict = Verdict::Failed;
    OracleStatus oracle = OracleStatus::Consistent;
    std::string justification;
    std::string axiom_ref;
    std::vector<std::string> flags;
    Word claimed;
    Word flat;   // the step expression flattened to a word via prior claims
    Word normal; // the normal form reached by the rewriting engine
    std::vector<std::string> facts;  // every fact key consumed, in order
    std::vector<std::string> axioms; // subset with figure-axiom standing
    std::string reason;              // set when verdict == Failed
    std::optional<F2Vector> witness; // set when oracle == Refuted
};

struct TargetReport {
    std::string text;
    Word word;
    bool derived = false;
    std::string via; // name of the step or generator whose claim matched
};

struct ScriptReport {
    std::string script;
    int genus = 0;
    int min_genus = 0;
    bool rejected = false;      // genus gate: genus < min_genus
    std::string reject_reason;
    std::vector<std::string> errors; // structural script errors
    std::vector<StepReport> steps;
    std::vector<TargetReport> targets;
    std::vector<std::string> axioms; // union over steps, sorted, deduplicated
    bool pass = false;

    // 0 pass; 2 failed step or underived target; 3 any mod-2 refutation
    // (dominates 2); 4 rejection or structural error.
    int exit_code() const;
};

// Runs the full pipeline: genus gate, instantiation, per-step checking with
// the mod-2 oracle cross-check, and target matching. The table must belong
// to the same genus.
ScriptReport run_script(const Script& script, int genus, const CurveTable& table);

// Same, starting from an already-instantiated script (used by tests that
// perturb individual steps).
ScriptReport run_script(const ConcreteScript& script, const CurveTable& table);

// True when the mod-2 homology images of a and b do not commute — a
// certificate that the group the two words generate is nonabelian.
bool check_nonabelian(const Word& a, const Word& b, const CurveTable& table);

// Human-readable and machine-readable renderings of a report.
std::string render_text(const ScriptReport& report, bool verbose = false);
std::string render_structured(const ScriptReport& report);

// ---------------------------------------------------------------------------
// Scripts compiled into the library.
// ---------------------------------------------------------------------------

std::optional<std::string> bundled_script(const std::string& name);
std::vector<std::string> bundled_script_names();

} // namespace crosscap
