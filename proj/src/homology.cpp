#include "crosscap/homology.hpp"

#include <bit>
#include <sstream>

namespace crosscap {

F2Vector F2Vector::basis(int dim, int i) {
    F2Vector v(dim);
    v.set(i, true);
    return v;
}

F2Vector F2Vector::from_support(int dim, const std::set<int>& support) {
    F2Vector v(dim);
    for (int i : support) v.set(i, true);
    return v;
}

void F2Vector::set(int i, bool v) {
    size_t block = static_cast<size_t>(i - 1) / 64;
    uint64_t mask = uint64_t{1} << ((i - 1) % 64);
    if (v) bits[block] |= mask;
    else bits[block] &= ~mask;
}

void F2Vector::operator^=(const F2Vector& o) {
    for (size_t b = 0; b < bits.size(); ++b) bits[b] ^= o.bits[b];
}

bool F2Vector::is_zero() const {
    for (uint64_t b : bits)
        if (b) return false;
    return true;
}

std::string F2Vector::str() const {
    std::string s(static_cast<size_t>(dim), '0');
    for (int i = 1; i <= dim; ++i)
        if (get(i)) s[static_cast<size_t>(i - 1)] = '1';
    return s;
}

int pairing(const F2Vector& x, const F2Vector& y) {
    uint64_t acc = 0;
    for (size_t b = 0; b < x.bits.size(); ++b) acc ^= x.bits[b] & y.bits[b];
    return std::popcount(acc) & 1;
}

F2Matrix F2Matrix::identity(int d) {
    F2Matrix m(d);
    for (int i = 1; i <= d; ++i) m.rows[static_cast<size_t>(i - 1)].set(i, true);
    return m;
}

F2Matrix F2Matrix::transvection(const F2Vector& v) {
    F2Matrix m = identity(v.dim);
    for (int r = 1; r <= v.dim; ++r)
        if (v.get(r)) m.rows[static_cast<size_t>(r - 1)] ^= v;
    // rows now hold I + v v^T: entry (r,c) = delta + v_r v_c
    return m;
}

F2Matrix F2Matrix::swap(int dim, int i, int j) {
    F2Matrix m = identity(dim);
    m.rows[static_cast<size_t>(i - 1)] = F2Vector::basis(dim, j);
    m.rows[static_cast<size_t>(j - 1)] = F2Vector::basis(dim, i);
    return m;
}

F2Matrix F2Matrix::cyclic_shift(int dim) {
    F2Matrix m(dim);
    for (int r = 1; r <= dim; ++r) {
        int c = r == 1 ? dim : r - 1; // row r picks input basis r-1
        m.rows[static_cast<size_t>(r - 1)].set(c, true);
    }
    return m;
}

F2Vector F2Matrix::apply(const F2Vector& x) const {
    F2Vector y(dim);
    for (int r = 1; r <= dim; ++r)
        if (pairing(rows[static_cast<size_t>(r - 1)], x)) y.set(r, true);
    return y;
}

F2Vector F2Matrix::column(int c) const {
    F2Vector col(dim);
    for (int r = 1; r <= dim; ++r)
        if (get(r, c)) col.set(r, true);
    return col;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
    F2Matrix out(dim);
    for (int r = 1; r <= dim; ++r) {
        F2Vector row(dim);
        const F2Vector& mine = rows[static_cast<size_t>(r - 1)];
        for (int k = 1; k <= dim; ++k)
            if (mine.get(k)) row ^= o.rows[static_cast<size_t>(k - 1)];
        out.rows[static_cast<size_t>(r - 1)] = row;
    }
    return out;
}

bool F2Matrix::is_isometry() const {
    for (int i = 1; i <= dim; ++i) {
        F2Vector ci = column(i);
        for (int j = i; j <= dim; ++j) {
            int expected = i == j ? 1 : 0;
            if (pairing(ci, column(j)) != expected) return false;
        }
    }
    return true;
}

std::string F2Matrix::str() const {
    std::ostringstream os;
    for (int r = 1; r <= dim; ++r) os << rows[static_cast<size_t>(r - 1)].str() << "\n";
    return os.str();
}

F2Matrix generator_matrix(const Letter& letter, const CurveTable& table) {
    int dim = table.genus().value;
    switch (letter.kind) {
        case Letter::Kind::Twist: {
            const CurveRecord& rec = table.resolve_curve(letter.curve);
            return F2Matrix::transvection(F2Vector::from_support(dim, rec.h_class));
        }
        case Letter::Kind::Transposition:
            return F2Matrix::swap(dim, letter.position, letter.position + 1);
        case Letter::Kind::Rotation:
            return F2Matrix::cyclic_shift(dim);
    }
    return F2Matrix::identity(dim);
}

F2Matrix word_matrix(const Word& w, const CurveTable& table) {
    int dim = table.genus().value;
    F2Matrix acc = F2Matrix::identity(dim);
    // letters act right to left; build left to right as acc * letter^exp
    for (const Letter& l : w.letters) {
        F2Matrix base = generator_matrix(Letter{l.kind, l.curve, l.position, 1}, table);
        int e = l.exponent;
        F2Matrix powed = F2Matrix::identity(dim);
        if (l.kind == Letter::Kind::Rotation) {
            if (e < 0) {
                // inverse shift = shift^(dim-1)
                F2Matrix inv = F2Matrix::identity(dim);
                for (int s = 0; s < dim - 1; ++s) inv = inv * base;
                base = inv;
                e = -e;
            }
            e %= dim; // T has order g on homology
            for (int s = 0; s < e; ++s) powed = powed * base;
        } else {
            // transvections and swaps are involutions mod 2
            if (((e % 2) + 2) % 2 == 1) powed = base;
        }
        acc = acc * powed;
    }
    return acc;
}

OracleResult oracle_check(const Word& lhs, const Word& rhs, const CurveTable& table) {
    F2Matrix ml = word_matrix(lhs, table);
    F2Matrix mr = word_matrix(rhs, table);
    if (ml == mr) return {true, std::nullopt};
    for (int c = 1; c <= ml.dim; ++c) {
        if (!(ml.column(c) == mr.column(c)))
            return {false, F2Vector::basis(ml.dim, c)};
    }
    return {false, std::nullopt}; // unreachable: unequal matrices differ on a column
}

} // namespace crosscap
