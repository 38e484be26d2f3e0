#include "crosscap/action.hpp"

#include <cstdlib>
#include <sstream>

namespace crosscap {

void FactLog::note(FactRef ref) {
    if (seen_.insert(ref.key).second) used.push_back(std::move(ref));
}

BraidRegistry BraidRegistry::derive(const CurveTable& table) {
    BraidRegistry reg;
    for (const IntersectionFact& f : table.intersections()) {
        if (f.count != 1) continue;
        if (f.x.family == Family::Alpha || f.y.family == Family::Alpha) continue;
        // stored directed both ways, so each unordered pair shows up twice;
        // emitting per direction gives exactly the (a,b) and (b,a) forms
        for (int sign : {1, -1}) {
            BraidFact bf;
            bf.source = f.x;
            bf.image = f.y;
            bf.left = Letter::twist(f.x, sign);
            bf.right = Letter::twist(f.y, sign);
            bf.basis = fact_ref(f);
            reg.facts_.push_back(bf);
        }
    }
    return reg;
}

const BraidFact* BraidRegistry::match(CurveId source, const Letter& rightmost) const {
    if (rightmost.kind != Letter::Kind::Twist) return nullptr;
    for (const BraidFact& f : facts_) {
        if (f.source == source && f.right.curve == rightmost.curve &&
            f.right.exponent == rightmost.exponent)
            return &f;
    }
    return nullptr;
}

namespace {

std::string missing_intersection(CurveId x, CurveId y) {
    std::ostringstream os;
    os << "missing fact: i(" << x.curve_token() << "," << y.curve_token() << ")";
    return os.str();
}

std::string missing_alpha(CurveId curve, int position) {
    std::ostringstream os;
    os << "missing fact: i(" << curve.curve_token() << ",alpha" << position << ")=0";
    return os.str();
}

bool traversal_meets_support(const CurveRecord& rec, int position, int genus) {
    int a = position;
    int b = position == genus ? 1 : position + 1;
    return rec.traversal.count(a) > 0 || rec.traversal.count(b) > 0;
}

// Walks explicitly declared single-step action facts for `base`, |e| times,
// forward for e > 0 and reversed for e < 0. Returns nothing with `why`
// untouched when the very first step has no fact (caller falls through to
// other rules); a gap later in the chain sets `why` and returns nothing.
std::optional<CurveImage> chain_action(const CurveTable& table, const Letter& base, CurveId cur,
                                       int e, FactLog* log, std::string* why) {
    int sign = 1;
    CurveId c = cur;
    int steps = std::abs(e);
    for (int s = 0; s < steps; ++s) {
        const ActionFact* f =
            e > 0 ? table.action_fact(base, c) : table.reverse_action_fact(base, c);
        if (!f) {
            if (s > 0) {
                std::ostringstream os;
                os << "missing action fact: " << base.token() << "("
                   << (e > 0 ? c.curve_token() : "?") << ")"
                   << (e > 0 ? "" : "=" + c.curve_token());
                *why = os.str();
            }
            return std::nullopt;
        }
        c = e > 0 ? f->image : f->curve;
        sign *= f->sign;
        if (log) log->note(*f);
    }
    return CurveImage{c, sign};
}

} // namespace

// A letter may sit between the two letters of a braid fact only when the
// database shows its support clear of both endpoint curves: it then commutes
// past the inner letter and fixes the source curve.
bool Rewriter::skippable(const Letter& l, CurveId a, CurveId b, FactLog* log,
                         std::string* why) const {
    switch (l.kind) {
        case Letter::Kind::Twist: {
            for (CurveId end : {a, b}) {
                const IntersectionFact* f = table_->intersection_fact(l.curve, end);
                if (!f || f->count != 0) {
                    if (why) *why = missing_intersection(l.curve, end) + "=0";
                    return false;
                }
                if (log) log->note(*f);
            }
            return true;
        }
        case Letter::Kind::Transposition: {
            int g = table_->genus().value;
            for (CurveId end : {a, b}) {
                const CurveRecord& rec = table_->resolve_curve(end);
                if (traversal_meets_support(rec, l.position, g)) {
                    if (why) {
                        std::ostringstream os;
                        os << "curve " << end.curve_token() << " traverses the support of u"
                           << l.position;
                        *why = os.str();
                    }
                    return false;
                }
                CurveId alpha{Family::Alpha, l.position};
                const IntersectionFact* f = table_->intersection_fact(end, alpha);
                if (!f || f->count != 0) {
                    if (why) *why = missing_alpha(end, l.position);
                    return false;
                }
                if (log) log->note(*f);
            }
            return true;
        }
        case Letter::Kind::Rotation:
            if (why) *why = "rotation letters cannot be commuted past a braid pair";
            return false;
    }
    return false;
}

Rewriter::Step Rewriter::apply_at(const std::vector<Letter>& letters, int i, CurveId cur,
                                  FactLog* log) const {
    Step out;
    const Letter& l = letters[static_cast<size_t>(i)];
    switch (l.kind) {
        case Letter::Kind::Twist: {
            if (l.curve == cur) { // a twist fixes its own core curve
                out = {true, i - 1, cur, 1, ""};
                return out;
            }
            const IntersectionFact* f = table_->intersection_fact(l.curve, cur);
            if (f && f->count == 0) {
                if (log) log->note(*f);
                out = {true, i - 1, cur, 1, ""};
                return out;
            }
            {
                std::string why;
                std::optional<CurveImage> chained = chain_action(
                    *table_, Letter::twist(l.curve), cur, l.exponent, log, &why);
                if (chained) {
                    out = {true, i - 1, chained->curve, chained->sign, ""};
                    return out;
                }
                if (!why.empty()) {
                    out.missing = why;
                    return out;
                }
            }
            if (f && f->count == 1 && std::abs(l.exponent) == 1) {
                const BraidFact* bf = braids_.match(cur, l);
                if (bf) {
                    FactLog skipped; // committed only if the match completes
                    for (int j = i - 1; j >= 0; --j) {
                        const Letter& m = letters[static_cast<size_t>(j)];
                        if (m.kind == Letter::Kind::Twist && m.curve == bf->left.curve &&
                            m.exponent == bf->left.exponent) {
                            if (log) {
                                log->note(bf->basis);
                                for (FactRef& r : skipped.used) log->note(std::move(r));
                            }
                            out = {true, j - 1, bf->image, 1, ""};
                            return out;
                        }
                        std::string why;
                        if (!skippable(m, bf->source, bf->image, &skipped, &why)) {
                            std::ostringstream os;
                            os << "braid rewrite " << bf->source.curve_token() << "->"
                               << bf->image.curve_token() << " blocked at " << m.token() << ": "
                               << why;
                            out.missing = os.str();
                            return out;
                        }
                    }
                    std::ostringstream os;
                    os << "braid rewrite " << bf->source.curve_token() << "->"
                       << bf->image.curve_token() << " found no mate " << bf->left.token();
                    out.missing = os.str();
                    return out;
                }
            }
            if (f) {
                std::ostringstream os;
                os << "no rewriting rule for " << l.token() << " acting on " << cur.curve_token()
                   << " with i(" << l.curve.curve_token() << "," << cur.curve_token()
                   << ")=" << f->count;
                out.missing = os.str();
                return out;
            }
            out.missing = missing_intersection(l.curve, cur);
            return out;
        }
        case Letter::Kind::Transposition: {
            const CurveRecord& rec = table_->resolve_curve(cur);
            bool clear = !traversal_meets_support(rec, l.position, table_->genus().value);
            if (clear) {
                CurveId alpha{Family::Alpha, l.position};
                const IntersectionFact* f = table_->intersection_fact(cur, alpha);
                if (f && f->count == 0) {
                    if (log) log->note(*f);
                    out = {true, i - 1, cur, 1, ""};
                    return out;
                }
            }
            std::string why;
            std::optional<CurveImage> chained = chain_action(
                *table_, Letter::transposition(l.position), cur, l.exponent, log, &why);
            if (chained) {
                out = {true, i - 1, chained->curve, chained->sign, ""};
                return out;
            }
            if (!why.empty()) {
                out.missing = why;
                return out;
            }
            if (!clear) {
                std::ostringstream os;
                os << "transposition u" << l.position << " moves " << cur.curve_token()
                   << " (traversal meets its support)";
                out.missing = os.str();
                return out;
            }
            out.missing = missing_alpha(cur, l.position);
            return out;
        }
        case Letter::Kind::Rotation: {
            std::string why;
            std::vector<const ActionFact*> chain;
            std::optional<CurveId> img = table_->rotate_curve(cur, l.exponent, &why, &chain);
            if (!img) {
                out.missing = why;
                return out;
            }
            int sign = 1;
            for (const ActionFact* f : chain) {
                sign *= f->sign;
                if (log) log->note(*f);
            }
            out = {true, i - 1, *img, sign, ""};
            return out;
        }
    }
    out.missing = "unhandled letter";
    return out;
}

ActionOutcome Rewriter::act(const Word& w, CurveId start, FactLog* log) const {
    CurveId cur = table_->canon(start);
    if (!table_->has_curve(cur)) {
        return {std::nullopt, "curve undefined at this genus: " + cur.curve_token()};
    }
    int sign = 1;
    int i = static_cast<int>(w.letters.size()) - 1;
    while (i >= 0) {
        Step s = apply_at(w.letters, i, cur, log);
        if (!s.ok) return {std::nullopt, s.missing};
        cur = s.curve;
        sign *= s.sign;
        i = s.next;
    }
    return {CurveImage{cur, sign}, ""};
}

// Transports the support pair {p, p+1} of a transposition letter through w
// (rightmost letter of w first). Only moves the database can justify are
// taken: rotations shift the pair, equal or disjoint transpositions fix it,
// twists clear of the support fix it.
std::optional<int> Rewriter::transport_transposition(const Word& w, int position, FactLog* log,
                                                     std::string* why) const {
    int g = table_->genus().value;
    int p = position;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const Letter& l = *it;
        switch (l.kind) {
            case Letter::Kind::Rotation: {
                int shifted = (((p - 1 + l.exponent) % g) + g) % g + 1;
                if (shifted == g) {
                    std::ostringstream os;
                    os << "rotation carries u" << p << " onto the crosscap seam {" << g << ",1}";
                    *why = os.str();
                    return std::nullopt;
                }
                p = shifted;
                break;
            }
            case Letter::Kind::Transposition: {
                if (l.position == p) break; // same support, commutes
                if (std::abs(l.position - p) >= 2) break; // disjoint supports
                std::ostringstream os;
                os << "adjacent transpositions u" << l.position << ", u" << p
                   << " admit no transport rule";
                *why = os.str();
                return std::nullopt;
            }
            case Letter::Kind::Twist: {
                const CurveRecord& rec = table_->resolve_curve(l.curve);
                if (traversal_meets_support(rec, p, g)) {
                    std::ostringstream os;
                    os << "twist " << l.curve.curve_token() << " meets the support of u" << p;
                    *why = os.str();
                    return std::nullopt;
                }
                CurveId alpha{Family::Alpha, p};
                const IntersectionFact* f = table_->intersection_fact(l.curve, alpha);
                if (!f || f->count != 0) {
                    *why = missing_alpha(l.curve, p);
                    return std::nullopt;
                }
                if (log) log->note(*f);
                break;
            }
        }
    }
    return p;
}

RewriteOutcome Rewriter::conjugate(const Word& w, const Word& x, FactLog* log) const {
    bool pure_rotation = true;
    for (const Letter& l : w.letters)
        if (l.kind != Letter::Kind::Rotation) pure_rotation = false;

    std::vector<Letter> out;
    for (const Letter& l : x.letters) {
        switch (l.kind) {
            case Letter::Kind::Twist: {
                ActionOutcome r = act(w, l.curve, log);
                if (!r.known()) return {std::nullopt, r.missing};
                out.push_back(Letter::twist(r.image->curve, l.exponent * r.image->sign));
                break;
            }
            case Letter::Kind::Transposition: {
                std::string why;
                std::optional<int> p = transport_transposition(w, l.position, log, &why);
                if (!p) return {std::nullopt, why};
                out.push_back(Letter::transposition(*p, l.exponent));
                break;
            }
            case Letter::Kind::Rotation: {
                if (!pure_rotation)
                    return {std::nullopt,
                            "rotation letters only transport through pure rotation words"};
                out.push_back(l); // T^k T^e T^-k = T^e
                break;
            }
        }
    }
    return {Word{reduce(std::move(out))}, ""};
}

Word Rewriter::normalize(const Word& w, FactLog* log, std::string* obstruction) const {
    Word cur = w;
    bool progressed = true;
    while (progressed) {
        progressed = false;
        int n = static_cast<int>(cur.letters.size());
        for (int m = (n - 1) / 2; m >= 1 && !progressed; --m) {
            bool dressed = true;
            for (int k = 0; k < m && dressed; ++k) {
                const Letter& pre = cur.letters[static_cast<size_t>(k)];
                const Letter& suf = cur.letters[static_cast<size_t>(n - 1 - k)];
                if (!(pre == suf.inverse())) dressed = false;
            }
            if (!dressed) continue;
            Word prefix{{cur.letters.begin(), cur.letters.begin() + m}};
            Word middle{{cur.letters.begin() + m, cur.letters.end() - m}};
            RewriteOutcome r = conjugate(prefix, middle, log);
            if (r.known()) {
                cur = *r.word; // strictly shorter: the dressing is gone
                progressed = true;
            } else if (obstruction) {
                *obstruction = r.missing;
            }
        }
    }
    return cur;
}

} // namespace crosscap
