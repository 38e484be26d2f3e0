#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crosscap/surface.hpp"
#include "crosscap/words.hpp"

namespace crosscap {

// Ordered, deduplicated record of the database facts a rewrite consumed.
// Every rule in the engine reports what licensed it, so a verification run
// can print its exact trusted base and the deletion sweep can prove each
// fact is load-bearing.
struct FactLog {
    std::vector<FactRef> used;

    void note(FactRef ref);
    void note(const IntersectionFact& f) { note(fact_ref(f)); }
    void note(const ActionFact& f) { note(fact_ref(f)); }

    bool contains(const std::string& key) const { return seen_.count(key) > 0; }

private:
    std::set<std::string> seen_;
};

// Derived two-letter rewriting facts: for every declared i(a,b)=1 the words
// `T_a T_b` and `T_a^-1 T_b^-1` (rightmost letter first) carry a to b, and
// the conjugated twist keeps its sign. Derived once per table in a setup
// pass; `basis` names the intersection fact the derivation rests on.
struct BraidFact {
    CurveId source;
    CurveId image;
    Letter left;  // twist about source, exponent ±1
    Letter right; // twist about image, same exponent
    FactRef basis;
};

class BraidRegistry {
public:
    static BraidRegistry derive(const CurveTable& table);

    // The unique fact whose source and rightmost letter match, or nullptr.
    const BraidFact* match(CurveId source, const Letter& rightmost) const;

    const std::vector<BraidFact>& facts() const { return facts_; }

private:
    std::vector<BraidFact> facts_;
};

// Image of a curve under a word, when the fact database determines it.
struct CurveImage {
    CurveId curve{Family::A, 0};
    int sign = 1; // conjugated twist = twist about image, raised to sign
};

struct ActionOutcome {
    std::optional<CurveImage> image;
    std::string missing; // names the first fact that was needed and absent

    bool known() const { return image.has_value(); }
};

struct RewriteOutcome {
    std::optional<Word> word;
    std::string missing;

    bool known() const { return word.has_value(); }
};

// Fact-licensed rewriting over one curve table. Every answer is justified
// by declared facts (logged when a FactLog is supplied); anything the
// database does not license comes back unknown rather than guessed.
class Rewriter {
public:
    explicit Rewriter(const CurveTable& table)
        : table_(&table), braids_(BraidRegistry::derive(table)) {}

    const CurveTable& table() const { return *table_; }
    const BraidRegistry& braids() const { return braids_; }

    // Image of `start` under `w`, folding letters rightmost first.
    ActionOutcome act(const Word& w, CurveId start, FactLog* log = nullptr) const;

    // Rewrites w · x · w^-1 as a plain word by transporting each letter of
    // x through w.
    RewriteOutcome conjugate(const Word& w, const Word& x, FactLog* log = nullptr) const;

    // Free reduction plus repeated collapse of exact conjugate dressings
    // p · m · p^-1 whenever the database can transport m through p. Best
    // effort: returns the shortest form reached, never fails. When no
    // collapse applies, *obstruction (if given) receives the missing-fact
    // message from the last transport attempt that got stuck.
    Word normalize(const Word& w, FactLog* log = nullptr,
                   std::string* obstruction = nullptr) const;

private:
    struct Step {
        bool ok = false;
        int next = 0; // index of the next (leftward) unprocessed letter
        CurveId curve{Family::A, 0};
        int sign = 1;
        std::string missing;
    };

    Step apply_at(const std::vector<Letter>& letters, int i, CurveId cur, FactLog* log) const;
    bool skippable(const Letter& l, CurveId a, CurveId b, FactLog* log,
                   std::string* why) const;
    std::optional<int> transport_transposition(const Word& w, int position, FactLog* log,
                                               std::string* why) const;

    const CurveTable* table_;
    BraidRegistry braids_;
};

} // namespace crosscap
