#include "crosscap/words.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace crosscap {

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::Gamma: return "Gamma";
        case Family::Alpha: return "Alpha";
    }
    return "?";
}

std::string CurveId::curve_token() const {
    std::string n = family_name(family);
    for (auto& ch : n) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return n + std::to_string(index);
}

std::string CurveId::twist_token() const {
    return family_name(family) + std::to_string(index);
}

CurveId canonical(CurveId id, Genus g) {
    if (id.family == Family::Gamma) {
        int k = ((id.index - 1) % g.value + g.value) % g.value + 1;
        if (k == 1) return {Family::A, 2};
        return {Family::Gamma, k};
    }
    return id;
}

bool Letter::same_base(const Letter& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Twist: return curve == o.curve;
        case Kind::Transposition: return position == o.position;
        case Kind::Rotation: return true;
    }
    return false;
}

std::string Letter::token() const {
    std::string base;
    switch (kind) {
        case Kind::Twist: base = curve.twist_token(); break;
        case Kind::Transposition: base = "u" + std::to_string(position); break;
        case Kind::Rotation: base = "T"; break;
    }
    if (exponent != 1) base += "^" + std::to_string(exponent);
    return base;
}

int Word::syllable_length() const { return static_cast<int>(letters.size()); }

std::string Word::str() const { return print_word(*this); }

Word reduce(std::vector<Letter> in) {
    std::vector<Letter> out;
    for (const Letter& l : in) {
        if (l.exponent == 0) continue;
        if (!out.empty() && out.back().same_base(l)) {
            out.back().exponent += l.exponent;
            if (out.back().exponent == 0) out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return Word{std::move(out)};
}

Word multiply(const Word& a, const Word& b) {
    std::vector<Letter> all = a.letters;
    all.insert(all.end(), b.letters.begin(), b.letters.end());
    return reduce(std::move(all));
}

Word invert(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.push_back(it->inverse());
    return Word{std::move(out)}; // reversal of a reduced word is reduced
}

Word conjugate(const Word& w, const Word& x) {
    return multiply(multiply(w, x), invert(w));
}

Word sandwich(const Word& u, const Word& v) {
    Word uv = multiply(u, v);
    return multiply(multiply(uv, u), invert(uv));
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() { return i >= s.size(); }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("word parse error at position " + std::to_string(i) + ": " + msg);
    }
};

int parse_int(Cursor& c) {
    size_t start = c.i;
    bool neg = false;
    if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) {
        neg = c.s[c.i] == '-';
        ++c.i;
    }
    long v = 0;
    bool any = false;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        any = true;
        v = v * 10 + (c.s[c.i] - '0');
        if (v > 1000000) c.fail("integer out of range");
        ++c.i;
    }
    if (!any) {
        c.i = start;
        c.fail("expected integer");
    }
    return static_cast<int>(neg ? -v : v);
}

} // namespace

Word parse_word(const std::string& text, Genus g) {
    Cursor c{text};
    std::vector<Letter> letters;
    c.skip_ws();
    if (!c.done() && c.s[c.i] == '1' && (c.i + 1 == c.s.size() || std::isspace(static_cast<unsigned char>(c.s[c.i + 1])))) {
        // `1` denotes the identity word
        ++c.i;
        c.skip_ws();
        if (!c.done()) c.fail("unexpected input after identity token");
        return {};
    }
    while (!c.done()) {
        Letter l{};
        if (c.s.compare(c.i, 5, "Gamma") == 0) {
            c.i += 5;
            l = Letter::twist({Family::Gamma, parse_int(c)});
        } else if (c.s.compare(c.i, 5, "Alpha") == 0) {
            c.i += 5;
            l = Letter::twist({Family::Alpha, parse_int(c)});
        } else if (c.s[c.i] == 'A' || c.s[c.i] == 'B' || c.s[c.i] == 'C') {
            Family f = c.s[c.i] == 'A' ? Family::A : c.s[c.i] == 'B' ? Family::B : Family::C;
            ++c.i;
            l = Letter::twist({f, parse_int(c)});
        } else if (c.s[c.i] == 'u') {
            ++c.i;
            l = Letter::transposition(parse_int(c));
        } else if (c.s[c.i] == 'T') {
            ++c.i;
            l = Letter::rotation();
        } else {
            c.fail(std::string("unexpected character '") + c.s[c.i] + "'");
        }
        if (!c.done() && c.s[c.i] == '^') {
            ++c.i;
            l.exponent = parse_int(c);
            if (l.exponent == 0) c.fail("zero exponent");
        }
        if (l.kind == Letter::Kind::Twist) {
            l.curve = canonical(l.curve, g);
            if (l.curve.index < 1) c.fail("curve index must be positive");
        }
        if (l.kind == Letter::Kind::Transposition && (l.position < 1 || l.position > g.value - 1))
            c.fail("transposition position " + std::to_string(l.position) + " outside 1.." + std::to_string(g.value - 1));
        letters.push_back(l);
        c.skip_ws();
    }
    return reduce(std::move(letters));
}

std::string print_word(const Word& w) {
    if (w.letters.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << ' ';
        os << w.letters[i].token();
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << print_word(w); }

} // namespace crosscap
