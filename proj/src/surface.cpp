#include "crosscap/surface.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace crosscap {

std::string provenance_token(Provenance p) {
    switch (p) {
        case Provenance::Paper: return "PAPER";
        case Provenance::FigureAxiom: return "FIGURE-AXIOM";
        case Provenance::DerivedPattern: return "DERIVED-PATTERN";
    }
    return "?";
}

std::optional<Provenance> parse_provenance(const std::string& token) {
    if (token == "PAPER") return Provenance::Paper;
    if (token == "FIGURE-AXIOM") return Provenance::FigureAxiom;
    if (token == "DERIVED-PATTERN") return Provenance::DerivedPattern;
    return std::nullopt;
}

FactRef fact_ref(const IntersectionFact& f) {
    CurveId a = f.x, b = f.y;
    if (b < a) std::swap(a, b);
    return {"i(" + a.curve_token() + "," + b.curve_token() + ")=" + std::to_string(f.count), f.prov};
}

FactRef fact_ref(const ActionFact& f) {
    std::string letter = f.letter.token();
    std::string sign = f.sign == 1 ? "" : "^-1";
    return {letter + "(" + f.curve.curve_token() + ")=" + f.image.curve_token() + sign, f.prov};
}

CurveTable::ActionKey CurveTable::action_key(const Letter& base, CurveId source) {
    ActionKey k{};
    k.kind = static_cast<int>(base.kind);
    k.curve = base.kind == Letter::Kind::Twist ? base.curve : CurveId{Family::A, 0};
    k.position = base.kind == Letter::Kind::Transposition ? base.position : 0;
    k.source = source;
    return k;
}

void CurveTable::add_curve(CurveRecord rec) {
    rec.id = canon(rec.id);
    if (curve_index_.count(rec.id))
        throw ParseError("duplicate curve record " + rec.id.curve_token());
    curve_index_[rec.id] = curves_.size();
    curves_.push_back(std::move(rec));
}

void CurveTable::add_intersection(IntersectionFact f) {
    f.x = canon(f.x);
    f.y = canon(f.y);
    intersection_index_[DirectedKey{f.x, f.y}] = intersections_.size();
    intersections_.push_back(f);
}

void CurveTable::add_action(ActionFact f) {
    if (f.letter.kind == Letter::Kind::Twist) f.letter.curve = canon(f.letter.curve);
    f.curve = canon(f.curve);
    f.image = canon(f.image);
    ActionKey key = action_key(f.letter, f.curve);
    action_index_[key] = actions_.size();
    reverse_action_index_[action_key(f.letter, f.image)] = actions_.size();
    actions_.push_back(f);
}

const CurveRecord& CurveTable::resolve_curve(CurveId id) const {
    auto it = curve_index_.find(canon(id));
    if (it == curve_index_.end())
        throw std::out_of_range("curve undefined at this genus: " + canon(id).curve_token());
    return curves_[it->second];
}

bool CurveTable::has_curve(CurveId id) const { return curve_index_.count(canon(id)) != 0; }

std::optional<int> CurveTable::intersection(CurveId x, CurveId y) const {
    const IntersectionFact* f = intersection_fact(x, y);
    if (!f) return std::nullopt;
    return f->count;
}

const IntersectionFact* CurveTable::intersection_fact(CurveId x, CurveId y) const {
    auto it = intersection_index_.find(DirectedKey{canon(x), canon(y)});
    if (it == intersection_index_.end()) return nullptr;
    return &intersections_[it->second];
}

const ActionFact* CurveTable::action_fact(const Letter& base, CurveId curve) const {
    auto it = action_index_.find(action_key(base, canon(curve)));
    if (it == action_index_.end()) return nullptr;
    return &actions_[it->second];
}

const ActionFact* CurveTable::reverse_action_fact(const Letter& base, CurveId image) const {
    auto it = reverse_action_index_.find(action_key(base, canon(image)));
    if (it == reverse_action_index_.end()) return nullptr;
    return &actions_[it->second];
}

std::optional<CurveId> CurveTable::rotate_curve(CurveId id, int k, std::string* missing,
                                                std::vector<const ActionFact*>* used) const {
    CurveId cur = canon(id);
    Letter base = Letter::rotation();
    int steps = k >= 0 ? k : -k;
    for (int s = 0; s < steps; ++s) {
        const ActionFact* f = k > 0 ? action_fact(base, cur) : reverse_action_fact(base, cur);
        if (!f) {
            if (missing) *missing = "rotation action unknown for curve " + cur.curve_token();
            return std::nullopt;
        }
        if (used) used->push_back(f);
        cur = k > 0 ? f->image : f->curve;
    }
    return cur;
}

bool CurveTable::erase_intersection(CurveId x, CurveId y) {
    CurveId cx = canon(x), cy = canon(y);
    bool any = false;
    for (size_t i = intersections_.size(); i-- > 0;) {
        const auto& f = intersections_[i];
        if ((f.x == cx && f.y == cy) || (f.x == cy && f.y == cx)) {
            intersections_.erase(intersections_.begin() + static_cast<long>(i));
            any = true;
        }
    }
    if (any) {
        intersection_index_.clear();
        for (size_t i = 0; i < intersections_.size(); ++i)
            intersection_index_[DirectedKey{intersections_[i].x, intersections_[i].y}] = i;
    }
    return any;
}

bool CurveTable::erase_action(const Letter& base, CurveId curve) {
    CurveId c = canon(curve);
    bool any = false;
    for (size_t i = actions_.size(); i-- > 0;) {
        const auto& f = actions_[i];
        if (f.curve == c && f.letter.same_base(base)) {
            actions_.erase(actions_.begin() + static_cast<long>(i));
            any = true;
        }
    }
    if (any) {
        action_index_.clear();
        reverse_action_index_.clear();
        for (size_t i = 0; i < actions_.size(); ++i) {
            action_index_[action_key(actions_[i].letter, actions_[i].curve)] = i;
            reverse_action_index_[action_key(actions_[i].letter, actions_[i].image)] = i;
        }
    }
    return any;
}

// ---------------------------------------------------------------------------
// validation

namespace {

int mod1(int v, int g) { return ((v - 1) % g + g) % g + 1; } // fold into 1..g

std::set<int> shift_set(const std::set<int>& s, int by, int g) {
    std::set<int> out;
    for (int v : s) out.insert(mod1(v + by, g));
    return out;
}

size_t overlap(const std::set<int>& a, const std::set<int>& b) {
    size_t n = 0;
    for (int v : a) n += b.count(v);
    return n;
}

} // namespace

std::vector<TableViolation> validate_table(const CurveTable& table) {
    std::vector<TableViolation> out;
    std::set<std::string> seen;
    auto report = [&](const std::string& what) {
        if (seen.insert(what).second) out.push_back({what});
    };
    int g = table.genus().value;

    for (const CurveRecord& rec : table.curves()) {
        std::string tok = rec.id.curve_token();
        if (!rec.two_sided) report("curve " + tok + ": only two-sided curves are admitted");
        if (rec.traversal.size() % 2 != 0)
            report("curve " + tok + ": odd traversal size (two-sided curves cross an even number of crosscaps)");
        for (int v : rec.traversal)
            if (v < 1 || v > g) report("curve " + tok + ": traversal index " + std::to_string(v) + " outside 1..g");
        for (int v : rec.h_class)
            if (v < 1 || v > g) report("curve " + tok + ": h_class index " + std::to_string(v) + " outside 1..g");
        if (rec.id.family == Family::Gamma || (rec.id.family == Family::A && rec.id.index == 2)) {
            if (rec.h_class != rec.traversal)
                report("curve " + tok + ": Gamma-family h_class must equal its traversal");
        }
        if (rec.id.family == Family::Alpha) {
            if (!rec.h_class.empty()) report("curve " + tok + ": Alpha-family h_class must be zero");
            if (!rec.traversal.empty()) report("curve " + tok + ": Alpha-family curves traverse no crosscap");
            if (rec.id.index < 1 || rec.id.index > g - 1)
                report("curve " + tok + ": Alpha index outside 1..g-1");
        }
    }

    for (const IntersectionFact& f : table.intersections()) {
        std::string key = fact_ref(f).key;
        if (!table.has_curve(f.x) || !table.has_curve(f.y)) {
            report("fact " + key + ": references a curve undefined at this genus");
            continue;
        }
        if (f.count < 0) report("fact " + key + ": negative intersection count");
        const IntersectionFact* mirror = table.intersection_fact(f.y, f.x);
        if (!mirror)
            report("fact " + key + ": symmetry violation, no mirrored fact for (" + f.y.curve_token() + "," +
                   f.x.curve_token() + ")");
        else if (mirror->count != f.count)
            report("fact " + key + ": symmetry violation, mirrored fact declares " + std::to_string(mirror->count));
        const CurveRecord& rx = table.resolve_curve(f.x);
        const CurveRecord& ry = table.resolve_curve(f.y);
        size_t pairing = overlap(rx.h_class, ry.h_class) % 2;
        if (static_cast<size_t>(f.count % 2) != pairing)
            report("fact " + key + ": parity violation, mod-2 pairing of the classes is " + std::to_string(pairing));
        // A curve passing through a crosscap of K_j must cross its boundary.
        for (const auto& [curve, alpha] : {std::pair{rx, ry}, std::pair{ry, rx}}) {
            if (alpha.id.family == Family::Alpha && f.count == 0) {
                int j = alpha.id.index;
                if (curve.traversal.count(j) || curve.traversal.count(mod1(j + 1, g)))
                    report("fact " + key + ": containment violation, " + curve.id.curve_token() +
                           " passes through a crosscap enclosed by " + alpha.id.curve_token());
            }
        }
    }

    for (const ActionFact& f : table.actions()) {
        std::string key = fact_ref(f).key;
        if (f.letter.exponent != 1) report("fact " + key + ": stored action letters must have exponent +1");
        if (f.sign != 1 && f.sign != -1) report("fact " + key + ": sign must be +1 or -1");
        if (!table.has_curve(f.curve) || !table.has_curve(f.image)) {
            report("fact " + key + ": references a curve undefined at this genus");
            continue;
        }
        if (f.letter.kind == Letter::Kind::Twist && !table.has_curve(f.letter.curve))
            report("fact " + key + ": twist letter about a curve undefined at this genus");
        if (f.letter.kind == Letter::Kind::Rotation) {
            const CurveRecord& rx = table.resolve_curve(f.curve);
            const CurveRecord& ry = table.resolve_curve(f.image);
            if (shift_set(rx.traversal, 1, g) != ry.traversal)
                report("fact " + key + ": rotation must shift the traversal by one crosscap");
            if (shift_set(rx.h_class, 1, g) != ry.h_class)
                report("fact " + key + ": rotation must shift the h_class by one crosscap");
        }
        if (f.letter.kind == Letter::Kind::Transposition &&
            (f.letter.position < 1 || f.letter.position > g - 1))
            report("fact " + key + ": transposition position outside 1..g-1");
    }
    return out;
}

// ---------------------------------------------------------------------------
// default table generator (pattern "default-1")

namespace {

// Crosscap run a curve is confined to; for Alpha_j this is the pair enclosed
// by the boundary, not the (empty) traversal.
std::set<int> support_run(const CurveRecord& rec, int g) {
    if (rec.id.family == Family::Alpha) return {rec.id.index, mod1(rec.id.index + 1, g)};
    return rec.traversal;
}

Provenance pair_provenance(CurveId x, CurveId y, int count) {
    auto figure = [](CurveId c) {
        return c.family == Family::B || c.family == Family::C || (c.family == Family::A && c.index == 1);
    };
    if (figure(x) || figure(y)) return Provenance::FigureAxiom;
    CurveId a2{Family::A, 2}, g2{Family::Gamma, 2};
    if (count == 1 && ((x == a2 && y == g2) || (x == g2 && y == a2))) return Provenance::Paper;
    return Provenance::DerivedPattern;
}

} // namespace

CurveTable default_table(Genus g) {
    int n = g.value;
    CurveTable t(g);
    t.set_pattern("default-1");
    t.set_version(1);

    auto run4 = [&](int k) {
        std::set<int> s;
        for (int d = 0; d < 4; ++d) s.insert(mod1(k + d, n));
        return s;
    };

    t.add_curve({{Family::A, 1}, {1, 2}, {1, 2}});
    if (n >= 4) { // four-crosscap runs only embed from genus 4 up
        t.add_curve({{Family::A, 2}, run4(1), run4(1)}); // a2 is Gamma1
        for (int k = 2; k <= n; ++k) t.add_curve({{Family::Gamma, k}, run4(k), run4(k)});
    }
    for (int i = 1; 2 * i + 1 <= n; ++i)
        t.add_curve({{Family::B, i}, {2 * i, 2 * i + 1}, {2 * i, 2 * i + 1}});
    for (int i = 1; 2 * i + 2 <= n; ++i)
        t.add_curve({{Family::C, i}, {2 * i + 1, 2 * i + 2}, {2 * i + 1, 2 * i + 2}});
    for (int j = 1; j <= n - 1; ++j) t.add_curve({{Family::Alpha, j}, {}, {}});

    // Intersection facts. Disjoint or strictly nested runs give i = 0
    // (parallel strands); runs meeting in exactly one crosscap cross once;
    // adjacent Gamma runs (three shared crosscaps) cross once. Alpha
    // boundaries participate in the disjoint rule only: anything entering
    // their Klein-bottle support crosses them.
    const auto& curves = t.curves();
    for (size_t i = 0; i < curves.size(); ++i) {
        for (size_t j = i + 1; j < curves.size(); ++j) {
            const CurveRecord& x = curves[i];
            const CurveRecord& y = curves[j];
            std::set<int> rx = support_run(x, n), ry = support_run(y, n);
            bool alpha = x.id.family == Family::Alpha || y.id.family == Family::Alpha;
            std::optional<int> count;
            size_t ov = overlap(rx, ry);
            if (ov == 0) {
                count = 0;
            } else if (!alpha) {
                bool nested = std::includes(rx.begin(), rx.end(), ry.begin(), ry.end()) ||
                              std::includes(ry.begin(), ry.end(), rx.begin(), rx.end());
                if (nested && rx != ry) count = 0;
                else if (ov == 1) count = 1;
                else if (ov == 3 && rx.size() == 4 && ry.size() == 4) {
                    bool gx = x.id.family == Family::Gamma || (x.id.family == Family::A && x.id.index == 2);
                    bool gy = y.id.family == Family::Gamma || (y.id.family == Family::A && y.id.index == 2);
                    int kx = x.id.family == Family::Gamma ? x.id.index : 1;
                    int ky = y.id.family == Family::Gamma ? y.id.index : 1;
                    int d = mod1(ky - kx + 1, n) - 1; // circular start distance
                    if (gx && gy && (d == 1 || d == n - 1)) count = 1;
                }
            }
            if (!count) continue;
            Provenance prov = pair_provenance(x.id, y.id, *count);
            t.add_intersection({x.id, y.id, *count, prov});
            t.add_intersection({y.id, x.id, *count, prov});
        }
    }

    // Rotation facts. gamma_k = T^{k-1}(a2) defines the Gamma cycle; the
    // b/c chain is the unique single-step pattern consistent with the
    // bundled scripts; T(a1) = b1 is readable only from the configuration.
    Letter rot = Letter::rotation();
    if (n >= 4) {
        for (int k = 1; k <= n; ++k) {
            CurveId from = canonical({Family::Gamma, k}, g);
            CurveId to = canonical({Family::Gamma, k + 1}, g);
            t.add_action({rot, from, to, 1, Provenance::Paper});
        }
    }
    t.add_action({rot, {Family::A, 1}, {Family::B, 1}, 1, Provenance::FigureAxiom});
    for (int i = 1; t.has_curve({Family::B, i}); ++i) {
        if (t.has_curve({Family::C, i}))
            t.add_action({rot, {Family::B, i}, {Family::C, i}, 1, Provenance::DerivedPattern});
        if (t.has_curve({Family::C, i}) && t.has_curve({Family::B, i + 1}))
            t.add_action({rot, {Family::C, i}, {Family::B, i + 1}, 1, Provenance::DerivedPattern});
    }
    for (int j = 1; j + 1 <= n - 1; ++j)
        t.add_action({rot, {Family::Alpha, j}, {Family::Alpha, j + 1}, 1, Provenance::DerivedPattern});

    return t;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::string set_token(const std::set<int>& s) {
    std::string out = "{";
    bool first = true;
    for (int v : s) {
        if (!first) out += ",";
        out += std::to_string(v);
        first = false;
    }
    return out + "}";
}

std::set<int> parse_set(const std::string& tok, int line) {
    if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
        throw ParseError("table line " + std::to_string(line) + ": malformed set " + tok);
    std::set<int> out;
    std::string body = tok.substr(1, tok.size() - 2);
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ','))
        out.insert(std::stoi(item));
    return out;
}

CurveId parse_curve_token(const std::string& tok, int line) {
    auto take = [&](const std::string& name, Family f) -> std::optional<CurveId> {
        if (tok.size() > name.size() && tok.compare(0, name.size(), name) == 0 &&
            std::isdigit(static_cast<unsigned char>(tok[name.size()])))
            return CurveId{f, std::stoi(tok.substr(name.size()))};
        return std::nullopt;
    };
    for (auto& [name, fam] : std::vector<std::pair<std::string, Family>>{
             {"Gamma", Family::Gamma}, {"Alpha", Family::Alpha}, {"A", Family::A}, {"B", Family::B}, {"C", Family::C}}) {
        if (auto id = take(name, fam)) return *id;
    }
    throw ParseError("table line " + std::to_string(line) + ": bad curve token " + tok);
}

Letter parse_letter_token(const std::string& tok, int line) {
    if (tok == "T") return Letter::rotation();
    if (tok.size() > 1 && tok[0] == 'u' && std::isdigit(static_cast<unsigned char>(tok[1])))
        return Letter::transposition(std::stoi(tok.substr(1)));
    return Letter::twist(parse_curve_token(tok, line));
}

} // namespace

std::string serialize_table(const CurveTable& table) {
    std::ostringstream os;
    os << "# crosscap curve table\n";
    os << "version " << table.version() << "\n";
    os << "pattern " << table.pattern() << "\n";
    os << "genus " << table.genus().value << "\n";
    os << "\n[curves]\n";
    for (const CurveRecord& rec : table.curves())
        os << rec.id.twist_token() << " traversal=" << set_token(rec.traversal) << " hclass="
           << set_token(rec.h_class) << "\n";
    os << "\n[intersections]\n";
    for (const IntersectionFact& f : table.intersections())
        os << f.x.twist_token() << " " << f.y.twist_token() << " " << f.count << " " << provenance_token(f.prov)
           << "\n";
    os << "\n[actions]\n";
    for (const ActionFact& f : table.actions())
        os << f.letter.token() << " " << f.curve.twist_token() << " " << f.image.twist_token() << " "
           << (f.sign == 1 ? "+1" : "-1") << " " << provenance_token(f.prov) << "\n";
    return os.str();
}

CurveTable parse_table(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int version = 1;
    std::string pattern = "custom";
    std::optional<Genus> genus;
    std::optional<CurveTable> table;
    enum class Section { Header, Curves, Intersections, Actions } section = Section::Header;

    auto tokens_of = [](const std::string& line) {
        std::vector<std::string> toks;
        std::stringstream ss(line);
        std::string t;
        while (ss >> t) toks.push_back(t);
        return toks;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks[0] == "[curves]" || toks[0] == "[intersections]" || toks[0] == "[actions]") {
            if (!genus) throw ParseError("table line " + std::to_string(lineno) + ": genus must precede sections");
            if (!table) {
                table.emplace(*genus);
                table->set_version(version);
                table->set_pattern(pattern);
            }
            section = toks[0] == "[curves]" ? Section::Curves
                      : toks[0] == "[intersections]" ? Section::Intersections
                                                     : Section::Actions;
            continue;
        }
        switch (section) {
            case Section::Header: {
                if (toks.size() == 2 && toks[0] == "version") version = std::stoi(toks[1]);
                else if (toks.size() == 2 && toks[0] == "pattern") pattern = toks[1];
                else if (toks.size() == 2 && toks[0] == "genus") genus = Genus(std::stoi(toks[1]));
                else throw ParseError("table line " + std::to_string(lineno) + ": unknown header line");
                break;
            }
            case Section::Curves: {
                if (toks.size() != 3 || toks[1].rfind("traversal=", 0) != 0 || toks[2].rfind("hclass=", 0) != 0)
                    throw ParseError("table line " + std::to_string(lineno) +
                                     ": expected '<curve> traversal={..} hclass={..}'");
                CurveRecord rec;
                rec.id = parse_curve_token(toks[0], lineno);
                rec.traversal = parse_set(toks[1].substr(10), lineno);
                rec.h_class = parse_set(toks[2].substr(7), lineno);
                table->add_curve(std::move(rec));
                break;
            }
            case Section::Intersections: {
                if (toks.size() != 4)
                    throw ParseError("table line " + std::to_string(lineno) +
                                     ": expected '<x> <y> <count> <provenance>'");
                auto prov = parse_provenance(toks[3]);
                if (!prov) throw ParseError("table line " + std::to_string(lineno) + ": bad provenance " + toks[3]);
                table->add_intersection({parse_curve_token(toks[0], lineno), parse_curve_token(toks[1], lineno),
                                         std::stoi(toks[2]), *prov});
                break;
            }
            case Section::Actions: {
                if (toks.size() != 5)
                    throw ParseError("table line " + std::to_string(lineno) +
                                     ": expected '<letter> <curve> <image> <sign> <provenance>'");
                auto prov = parse_provenance(toks[4]);
                if (!prov) throw ParseError("table line " + std::to_string(lineno) + ": bad provenance " + toks[4]);
                int sign = toks[3] == "+1" ? 1 : toks[3] == "-1" ? -1 : 0;
                if (!sign) throw ParseError("table line " + std::to_string(lineno) + ": bad sign " + toks[3]);
                table->add_action({parse_letter_token(toks[0], lineno), parse_curve_token(toks[1], lineno),
                                   parse_curve_token(toks[2], lineno), sign, *prov});
                break;
            }
        }
    }
    if (!table) throw ParseError("table has no sections (missing genus header?)");
    return *std::move(table);
}

} // namespace crosscap
