#pragma once

#include "crosscap/types.hpp"
#include "crosscap/words.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace crosscap {

enum class Provenance { Paper, FigureAxiom, DerivedPattern };

std::string provenance_token(Provenance p);
std::optional<Provenance> parse_provenance(const std::string& token);

// A named two-sided curve on N_g in the circular crosscap model.
// traversal: the set of crosscaps the curve passes through (1-based, even
// size since the curve is two-sided). h_class: its Z/2-homology class in the
// crosscap basis mu_1..mu_g, stored as the support set.
struct CurveRecord {
    CurveId id;
    std::set<int> traversal;
    std::set<int> h_class;
    bool two_sided = true;
};

struct IntersectionFact {
    CurveId x, y;
    int count = 0; // geometric intersection number, stored, never computed
    Provenance prov;
};

// Single-letter action fact: letter(curve) = image up to isotopy, with sign
// recording whether the twist about the image appears inverted.
struct ActionFact {
    Letter letter; // exponent is +1 in stored facts
    CurveId curve;
    CurveId image;
    int sign = 1;
    Provenance prov;
};

// Curve table plus fact database for one genus. Frozen after load: the
// checker derives braid facts in a setup phase and never mutates afterwards.
class CurveTable {
public:
    explicit CurveTable(Genus g) : genus_(g) {}

    Genus genus() const { return genus_; }
    const std::string& pattern() const { return pattern_; }
    void set_pattern(std::string p) { pattern_ = std::move(p); }
    int version() const { return version_; }
    void set_version(int v) { version_ = v; }

    void add_curve(CurveRecord rec);
    void add_intersection(IntersectionFact f); // one direction per call
    void add_action(ActionFact f);

    // Resolves a curve id (after canonicalization) to its record.
    // Throws std::out_of_range("curve undefined at this genus: ...") when absent.
    const CurveRecord& resolve_curve(CurveId id) const;
    bool has_curve(CurveId id) const;

    // Declared intersection number for the (unordered, via stored directed
    // entries) pair, or nullopt when the table does not carry the fact.
    std::optional<int> intersection(CurveId x, CurveId y) const;
    const IntersectionFact* intersection_fact(CurveId x, CurveId y) const;

    // Single-step rotation image: the stored fact T(id) = image. Reverse
    // lookups (k < 0) use the inverse of the stored facts.
    const ActionFact* action_fact(const Letter& base, CurveId curve) const;
    const ActionFact* reverse_action_fact(const Letter& base, CurveId image) const;

    // Applies T^k to the curve through the stored single-step chain.
    // Returns nullopt when the chain has a gap, with the gap reported via
    // `missing` when provided.
    std::optional<CurveId> rotate_curve(CurveId id, int k, std::string* missing = nullptr,
                                        std::vector<const ActionFact*>* used = nullptr) const;

    const std::vector<CurveRecord>& curves() const { return curves_; }
    const std::vector<IntersectionFact>& intersections() const { return intersections_; }
    const std::vector<ActionFact>& actions() const { return actions_; }

    CurveId canon(CurveId id) const { return canonical(id, genus_); }

    // Removes both directions of one intersection fact; used by the
    // trusted-base deletion sweep.
    bool erase_intersection(CurveId x, CurveId y);
    bool erase_action(const Letter& base, CurveId curve);

private:
    struct DirectedKey {
        CurveId x, y;
        auto operator<=>(const DirectedKey&) const = default;
    };
    struct ActionKey {
        int kind;
        CurveId curve; // twist target for twist letters
        int position;  // transposition position
        CurveId source;
        auto operator<=>(const ActionKey&) const = default;
    };
    static ActionKey action_key(const Letter& base, CurveId source);

    Genus genus_;
    std::string pattern_ = "custom";
    int version_ = 1;
    std::vector<CurveRecord> curves_;
    std::vector<IntersectionFact> intersections_;
    std::vector<ActionFact> actions_;
    std::map<CurveId, size_t> curve_index_;
    std::map<DirectedKey, size_t> intersection_index_;
    std::map<ActionKey, size_t> action_index_;
    std::map<ActionKey, size_t> reverse_action_index_;
};

// Stable identity of a database fact, used for consumption tracking, the
// trusted-base report and the deletion sweep. Intersection keys use the
// unordered pair in id order, e.g. "i(a2,gamma2)=1"; action keys look like
// "T(b1)=c1".
struct FactRef {
    std::string key;
    Provenance prov;

    auto operator<=>(const FactRef&) const = default;
};

FactRef fact_ref(const IntersectionFact& f);
FactRef fact_ref(const ActionFact& f);

// One structural violation found by validate_table; empty list means the
// table satisfies every invariant.
struct TableViolation {
    std::string what;
};

// Checks: directed facts symmetric with equal counts; declared count parity
// matches the mod-2 pairing of the homology classes; traversal sets have even
// size and indices in 1..g; Gamma h-classes equal their traversals and Alpha
// h-classes are empty; rotation facts shift traversal and h_class by one
// crosscap; declared i(x, alpha_j) = 0 requires x's traversal to avoid
// {j, j+1}; action facts reference known curves and unit exponents.
std::vector<TableViolation> validate_table(const CurveTable& table);

// Builds the default bundled table for genus g (pattern "default-1"):
//   Gamma_k through {k..k+3} mod g (Gamma_1 is A2), a_1 through {1,2},
//   b_i through {2i, 2i+1}, c_i through {2i+1, 2i+2}, alpha_j around {j, j+1}.
// Intersection facts: i = 0 for disjoint or strictly nested traversal runs,
// i = 1 for runs overlapping in exactly one or exactly three crosscaps
// (alpha curves participate in the disjoint rule only). Rotation facts:
// the Gamma cycle, T(a1) = b1, T(b_i) = c_i, T(c_i) = b_{i+1}.
CurveTable default_table(Genus g);

// Text round-trip, documented in docs/formats.md. serialize(parse(t)) == t
// for files produced by serialize_table.
std::string serialize_table(const CurveTable& table);
CurveTable parse_table(const std::string& text);

} // namespace crosscap
