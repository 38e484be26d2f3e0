#pragma once

#include "crosscap/types.hpp"

#include <iosfwd>
#include <vector>

namespace crosscap {

// One syllable of a word in the mapping class group presentation:
// a Dehn twist about a named curve, a crosscap transposition u_j, or the
// order-g rotation T. Exponents are arbitrary nonzero integers; rotation
// exponents are kept symbolic (never reduced mod g at the word level).
struct Letter {
    enum class Kind { Twist, Transposition, Rotation };

    Kind kind;
    CurveId curve{Family::A, 0}; // Twist only
    int position = 0;            // Transposition only, 1..g-1
    int exponent = 1;            // never 0

    static Letter twist(CurveId c, int e = 1) { return {Kind::Twist, c, 0, e}; }
    static Letter transposition(int pos, int e = 1) { return {Kind::Transposition, {Family::A, 0}, pos, e}; }
    static Letter rotation(int e = 1) { return {Kind::Rotation, {Family::A, 0}, 0, e}; }

    // True when two letters twist/transpose/rotate about the same target,
    // regardless of exponent.
    bool same_base(const Letter& o) const;
    Letter inverse() const { return {kind, curve, position, -exponent}; }

    bool operator==(const Letter& o) const {
        return kind == o.kind && curve == o.curve && position == o.position && exponent == o.exponent;
    }

    std::string token() const;
};

// Freely reduced word over the letters above. The representation invariant
// (no adjacent letters with equal base, no zero exponents) is maintained by
// every operation; construct through reduce()/multiply() rather than by
// editing letters directly.
struct Word {
    std::vector<Letter> letters;

    bool operator==(const Word& o) const { return letters == o.letters; }
    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    int syllable_length() const;

    std::string str() const;
};

// Collapses adjacent same-base letters (summing exponents, dropping zeros)
// until no merge applies. The result is the canonical form of the input.
Word reduce(std::vector<Letter> letters);

Word multiply(const Word& a, const Word& b);
Word invert(const Word& w);
// w * x * w^-1, reduced at the seams only; no geometric rewriting.
Word conjugate(const Word& w, const Word& x);
// (u v) u (u v)^-1 — the sandwich pattern used throughout the proofs.
Word sandwich(const Word& u, const Word& v);

// Parses the word syntax used everywhere in the toolkit: letters are
// `A2`, `B4^-1`, `Gamma10`, `Alpha3`, `u12`, `T`, `T^3`, separated by
// optional whitespace. Curve ids are canonicalized for the given genus;
// transposition positions are validated against 1..g-1. Empty input (or
// the token `1`) is the identity. Throws ParseError with a position.
Word parse_word(const std::string& text, Genus g);

// print(parse(w)) == w for canonical text; parse(print(w)) == w always.
std::string print_word(const Word& w);

std::ostream& operator<<(std::ostream& os, const Word& w);

} // namespace crosscap
