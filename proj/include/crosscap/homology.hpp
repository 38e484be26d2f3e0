#pragma once

#include "crosscap/surface.hpp"
#include "crosscap/words.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crosscap {

// Vector in H_1(N_g; Z/2) = (Z/2)^g over the crosscap-core basis mu_1..mu_g.
struct F2Vector {
    int dim = 0;
    std::vector<uint64_t> bits;

    explicit F2Vector(int d = 0) : dim(d), bits((static_cast<size_t>(d) + 63) / 64, 0) {}
    static F2Vector basis(int dim, int i); // 1-based index
    static F2Vector from_support(int dim, const std::set<int>& support);

    bool get(int i) const { return (bits[static_cast<size_t>(i - 1) / 64] >> ((i - 1) % 64)) & 1; }
    void set(int i, bool v);
    void operator^=(const F2Vector& o);
    bool operator==(const F2Vector& o) const { return dim == o.dim && bits == o.bits; }
    bool is_zero() const;

    std::string str() const; // bit string, index 1 leftmost
};

// The intersection pairing: the crosscap basis is orthonormal mod 2
// (mu_i . mu_j = delta_ij), so the pairing is the parity of the AND.
int pairing(const F2Vector& x, const F2Vector& y);

// Column-convention g x g matrix over F2: y = M x, rows printed as bit
// strings with column index = input basis index.
struct F2Matrix {
    int dim = 0;
    std::vector<F2Vector> rows;

    explicit F2Matrix(int d = 0) : dim(d), rows(static_cast<size_t>(d), F2Vector(d)) {}
    static F2Matrix identity(int d);
    // I + v v^T: the mod-2 transvection induced by a Dehn twist about a
    // curve with class v.
    static F2Matrix transvection(const F2Vector& v);
    static F2Matrix swap(int dim, int i, int j);
    static F2Matrix cyclic_shift(int dim); // mu_i -> mu_{i+1}

    bool get(int r, int c) const { return rows[static_cast<size_t>(r - 1)].get(c); }
    F2Vector apply(const F2Vector& x) const;
    F2Vector column(int c) const;
    F2Matrix operator*(const F2Matrix& o) const;
    bool operator==(const F2Matrix& o) const { return dim == o.dim && rows == o.rows; }

    // Pairing-preservation on all basis pairs; every mapping-class image
    // must satisfy this.
    bool is_isometry() const;

    std::string str() const; // one row per line
};

// Image of a single generator letter in H_1(N_g; Z/2). Twists need the
// table for the curve's class; transpositions and the rotation do not.
F2Matrix generator_matrix(const Letter& letter, const CurveTable& table);

// Homomorphic extension to words (letters composed right to left).
F2Matrix word_matrix(const Word& w, const CurveTable& table);

// Refutation-only oracle: equal matrices prove nothing (the action on
// H_1(.; Z/2) forgets twist directions), unequal matrices disprove the
// identity and come with a basis-vector witness.
struct OracleResult {
    bool consistent = true;
    std::optional<F2Vector> witness; // basis vector the two sides disagree on
};

OracleResult oracle_check(const Word& lhs, const Word& rhs, const CurveTable& table);

} // namespace crosscap
