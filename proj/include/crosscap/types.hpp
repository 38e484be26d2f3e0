#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace crosscap {

// Genus of the nonorientable surface N_g: g crosscaps arranged in a circle,
// indexed 1..g. The toolkit treats g >= 3.
struct Genus {
    int value = 0;

    explicit Genus(int g) : value(g) {
        if (g < 3) throw std::invalid_argument("genus must be at least 3, got " + std::to_string(g));
    }
    auto operator<=>(const Genus&) const = default;
};

enum class Family { A, B, C, Gamma, Alpha };

std::string family_name(Family f);

// Identifier of a named curve: family plus 1-based index.
// Gamma indices live mod g and Gamma1 is the same curve as A2; canonical()
// folds both so that ids compare letter-for-letter.
struct CurveId {
    Family family;
    int index;

    auto operator<=>(const CurveId&) const = default;

    // Lowercase token used for curves in fact notation, e.g. "gamma4", "a2".
    std::string curve_token() const;
    // Capitalized token used for twist letters in words, e.g. "Gamma4", "A2".
    std::string twist_token() const;
};

// Folds Gamma indices into 1..g and maps Gamma1 onto A2 (same curve).
CurveId canonical(CurveId id, Genus g);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace crosscap
