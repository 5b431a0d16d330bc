#include "capax/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "capax/error.hpp"
#include "capax/summands.hpp"

namespace capax::spaces {

using fga::AbelianGroup;

bool SpaceExpr::operator==(const SpaceExpr& o) const {
    if (kind != o.kind || n != o.n || !(group == o.group)) return false;
    if (children.size() != o.children.size()) return false;
    for (std::size_t i = 0; i < children.size(); ++i)
        if (!(*children[i] == *o.children[i])) return false;
    return true;
}

namespace {

ExprPtr make(SpaceExpr e) { return std::make_shared<const SpaceExpr>(std::move(e)); }

} // namespace

ExprPtr point() { return make({SpaceExpr::Kind::Point}); }

ExprPtr sphere(std::uint64_t n) {
    if (n < 1) throw Error(ErrorCode::Domain, "sphere: dimension must be >= 1");
    SpaceExpr e{SpaceExpr::Kind::Sphere};
    e.n = n;
    return make(std::move(e));
}

ExprPtr moore(AbelianGroup a, std::uint64_t n) {
    if (n < 2) throw Error(ErrorCode::Domain, "Moore spaces require degree >= 2; M(A,1) is not defined");
    SpaceExpr e{SpaceExpr::Kind::Moore};
    e.n = n;
    e.group = std::move(a);
    return make(std::move(e));
}

ExprPtr em(AbelianGroup g, std::uint64_t n) {
    if (n < 1) throw Error(ErrorCode::Domain, "em: degree must be >= 1");
    SpaceExpr e{SpaceExpr::Kind::EM};
    e.n = n;
    e.group = std::move(g);
    return make(std::move(e));
}

ExprPtr torus(std::uint64_t k) {
    if (k < 1) throw Error(ErrorCode::Domain, "torus: rank must be >= 1");
    SpaceExpr e{SpaceExpr::Kind::Torus};
    e.n = k;
    return make(std::move(e));
}

ExprPtr pseudo_projective(std::uint64_t q) {
    SpaceExpr e{SpaceExpr::Kind::PseudoProjective};
    e.n = q;
    return make(std::move(e));
}

ExprPtr suspension(std::uint64_t times, ExprPtr inner) {
    if (times < 1) throw Error(ErrorCode::Domain, "suspension: count must be >= 1");
    SpaceExpr e{SpaceExpr::Kind::Suspension};
    e.n = times;
    e.children.push_back(std::move(inner));
    return make(std::move(e));
}

ExprPtr wedge(std::vector<ExprPtr> children) {
    if (children.empty()) throw Error(ErrorCode::Domain, "wedge: needs at least one child");
    SpaceExpr e{SpaceExpr::Kind::Wedge};
    e.children = std::move(children);
    return make(std::move(e));
}

ExprPtr product(std::vector<ExprPtr> children) {
    if (children.empty()) throw Error(ErrorCode::Domain, "product: needs at least one child");
    SpaceExpr e{SpaceExpr::Kind::Product};
    e.children = std::move(children);
    return make(std::move(e));
}

NormalForm NormalForm::unclassified(std::string code, std::string text) {
    NormalForm nf;
    nf.kind = Kind::Unclassified;
    nf.reason_code = std::move(code);
    nf.reason = std::move(text);
    return nf;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

NormalForm moore_single(std::uint64_t degree, AbelianGroup a) {
    NormalForm nf;
    nf.kind = NormalForm::Kind::MooreWedge;
    nf.groups.emplace(degree, std::move(a));
    return nf;
}

NormalForm em_single(std::uint64_t degree, AbelianGroup g) {
    NormalForm nf;
    nf.kind = NormalForm::Kind::EMProduct;
    nf.groups.emplace(degree, std::move(g));
    return nf;
}

// Merge `g` into the degree map; a failed direct sum downgrades to
// Unclassified (q-sum for Q, unsupported-mix otherwise).
bool merge_degree(std::map<std::uint64_t, AbelianGroup>& map, std::uint64_t degree,
                  const AbelianGroup& g, NormalForm& fail) {
    auto it = map.find(degree);
    if (it == map.end()) {
        map.emplace(degree, g);
        return true;
    }
    try {
        it->second = fga::direct_sum(it->second, g);
        return true;
    } catch (const Error&) {
        if (g.is_rationals() || it->second.is_rationals())
            fail = NormalForm::unclassified("q-sum", "direct sums involving Q are not supported");
        else
            fail = NormalForm::unclassified("unsupported-mix",
                                            "cannot merge same-degree groups with infinite rank and torsion");
        return false;
    }
}

void flatten(const SpaceExpr& e, SpaceExpr::Kind kind, std::vector<const SpaceExpr*>& out) {
    if (e.kind == kind) {
        for (const auto& c : e.children) flatten(*c, kind, out);
    } else {
        out.push_back(&e);
    }
}

// Collect the Moore atoms of susp^t(child): degree map additions, or an
// Unclassified verdict for anything a suspension does not reach.
bool suspension_parts(const SpaceExpr& child, std::uint64_t t,
                      std::vector<std::pair<std::uint64_t, AbelianGroup>>& parts, NormalForm& fail) {
    switch (child.kind) {
    case SpaceExpr::Kind::Point:
        return true;
    case SpaceExpr::Kind::Sphere:
        parts.emplace_back(child.n + t, AbelianGroup::free_group(1));
        return true;
    case SpaceExpr::Kind::Moore:
        parts.emplace_back(child.n + t, child.group);
        return true;
    case SpaceExpr::Kind::PseudoProjective:
        if (child.n == 1) return true; // P_1 is contractible
        if (child.n == 0) parts.emplace_back(t + 1, AbelianGroup::free_group(1)); // P_0 = S^1
        else parts.emplace_back(t + 1, AbelianGroup::cyclic(child.n));
        return true;
    case SpaceExpr::Kind::Torus:
        if (child.n == 1) { // T^1 = S^1
            parts.emplace_back(t + 1, AbelianGroup::free_group(1));
            return true;
        }
        break;
    case SpaceExpr::Kind::EM:
        if (child.n == 1 && child.group == AbelianGroup::free_group(1)) { // K(Z,1) = S^1
            parts.emplace_back(t + 1, AbelianGroup::free_group(1));
            return true;
        }
        break;
    case SpaceExpr::Kind::Suspension:
        return suspension_parts(*child.children[0], t + child.n, parts, fail);
    case SpaceExpr::Kind::Wedge: {
        std::vector<const SpaceExpr*> flat;
        flatten(child, SpaceExpr::Kind::Wedge, flat);
        for (const SpaceExpr* c : flat)
            if (!suspension_parts(*c, t, parts, fail)) return false;
        return true;
    }
    case SpaceExpr::Kind::Product:
        break;
    }
    fail = NormalForm::unclassified("unsupported-mix", "suspension of a non-Moore-type space");
    return false;
}

NormalForm normalize_suspension(std::uint64_t t, const SpaceExpr& inner) {
    std::vector<std::pair<std::uint64_t, AbelianGroup>> parts;
    NormalForm fail;
    if (!suspension_parts(inner, t, parts, fail)) return fail;
    NormalForm nf;
    nf.kind = NormalForm::Kind::MooreWedge;
    for (const auto& [deg, g] : parts) {
        if (g.is_trivial()) continue;
        if (!merge_degree(nf.groups, deg, g, fail)) return fail;
    }
    if (nf.groups.empty()) nf.kind = NormalForm::Kind::PointForm;
    return nf;
}

NormalForm normalize_wedge(const SpaceExpr& e) {
    std::vector<const SpaceExpr*> flat;
    flatten(e, SpaceExpr::Kind::Wedge, flat);

    std::vector<NormalForm> parts;
    for (const SpaceExpr* c : flat) {
        NormalForm nf = normalize(*c);
        if (nf.kind == NormalForm::Kind::Unclassified) return nf;
        if (nf.kind == NormalForm::Kind::PointForm) continue;
        parts.push_back(std::move(nf));
    }
    if (parts.empty()) return NormalForm{};
    if (parts.size() == 1) return parts.front();

    // After flattening, an EM part can only enter a wedge as a plain
    // circle; anything else has no wedge rule here.
    std::uint64_t circles = 0;
    NormalForm fail;
    std::map<std::uint64_t, AbelianGroup> moore_map;
    for (const NormalForm& p : parts) {
        if (p.kind == NormalForm::Kind::EMProduct) {
            if (p.groups.size() == 1 && p.groups.begin()->first == 1 &&
                p.groups.begin()->second == AbelianGroup::free_group(1)) {
                ++circles;
                continue;
            }
            return NormalForm::unclassified("unsupported-mix",
                                            "wedge of Eilenberg-MacLane factors has no product rule");
        }
        for (const auto& [deg, g] : p.groups)
            if (!merge_degree(moore_map, deg, g, fail)) return fail;
    }
    if (circles > 0 && !moore_map.empty())
        return NormalForm::unclassified("open-problem",
                                        "wedge of a circle with higher atoms: finiteness of the capacity is unknown");
    if (circles > 0) return em_single(1, AbelianGroup::free_group(circles));
    NormalForm nf;
    nf.kind = NormalForm::Kind::MooreWedge;
    nf.groups = std::move(moore_map);
    return nf;
}

NormalForm normalize_product(const SpaceExpr& e) {
    std::vector<const SpaceExpr*> flat;
    flatten(e, SpaceExpr::Kind::Product, flat);

    std::vector<NormalForm> parts;
    for (const SpaceExpr* c : flat) {
        NormalForm nf = normalize(*c);
        if (nf.kind == NormalForm::Kind::Unclassified) return nf;
        if (nf.kind == NormalForm::Kind::PointForm) continue;
        parts.push_back(std::move(nf));
    }
    if (parts.empty()) return NormalForm{};
    if (parts.size() == 1) return parts.front();

    NormalForm fail;
    std::map<std::uint64_t, AbelianGroup> em_map;
    for (const NormalForm& p : parts) {
        if (p.kind != NormalForm::Kind::EMProduct)
            return NormalForm::unclassified("unsupported-mix",
                                            "products are only supported for Eilenberg-MacLane factors");
        for (const auto& [deg, g] : p.groups)
            if (!merge_degree(em_map, deg, g, fail)) return fail;
    }
    NormalForm nf;
    nf.kind = NormalForm::Kind::EMProduct;
    nf.groups = std::move(em_map);
    return nf;
}

} // namespace

NormalForm normalize(const SpaceExpr& e) {
    switch (e.kind) {
    case SpaceExpr::Kind::Point:
        return NormalForm{};
    case SpaceExpr::Kind::Sphere:
        if (e.n == 1) return em_single(1, AbelianGroup::free_group(1));
        return moore_single(e.n, AbelianGroup::free_group(1));
    case SpaceExpr::Kind::Moore:
        if (e.group.is_trivial()) return NormalForm{};
        return moore_single(e.n, e.group);
    case SpaceExpr::Kind::EM:
        if (e.group.is_trivial()) return NormalForm{};
        return em_single(e.n, e.group);
    case SpaceExpr::Kind::Torus:
        return em_single(1, AbelianGroup::free_group(e.n));
    case SpaceExpr::Kind::PseudoProjective:
        if (e.n == 1) return NormalForm{};
        if (e.n == 0) return em_single(1, AbelianGroup::free_group(1));
        return NormalForm::unclassified("unsupported-mix",
                                        "P_q (q >= 2) is neither a Moore space nor an Eilenberg-MacLane space");
    case SpaceExpr::Kind::Suspension:
        return normalize_suspension(e.n, *e.children[0]);
    case SpaceExpr::Kind::Wedge:
        return normalize_wedge(e);
    case SpaceExpr::Kind::Product:
        return normalize_product(e);
    }
    throw Error(ErrorCode::Invariant, "normalize: unknown node kind");
}

CapacityResult capacity(const SpaceExpr& e) {
    const NormalForm nf = normalize(e);
    switch (nf.kind) {
    case NormalForm::Kind::PointForm:
        return CapacityResult::finite(1);
    case NormalForm::Kind::Unclassified:
        return CapacityResult::unknown(nf.reason_code);
    default:
        break;
    }
    if (nf.groups.size() > 1) {
        for (const auto& [deg, g] : nf.groups) {
            (void)deg;
            // The wedge/product capacity rules require every factor Hopfian.
            if (!fga::is_hopfian(g)) return CapacityResult::unknown("non-hopfian");
        }
    }
    Int total = 1;
    for (const auto& [deg, g] : nf.groups) {
        (void)deg;
        const summands::SummandCount c = summands::count_summands(g);
        if (c.is_infinite) return CapacityResult::infinite();
        total *= c.value;
    }
    return CapacityResult::finite(total);
}

// ---------------------------------------------------------------------------
// Dominated homotopy types

namespace {

// Canonical atom for a (nontrivial) group at a degree, Moore or EM side.
ExprPtr canonical_atom(bool moore_side, std::uint64_t degree, const AbelianGroup& g) {
    if (moore_side) {
        if (g == AbelianGroup::free_group(1)) return sphere(degree);
        return moore(g, degree);
    }
    if (degree == 1 && !g.is_rationals() && g.torsion().empty() && !g.has_infinite_rank()) {
        if (g.free_rank() == 1) return sphere(1);
        return torus(g.free_rank());
    }
    return em(g, degree);
}

std::vector<AbelianGroup> summand_classes(const AbelianGroup& g) {
    if (g.is_rationals()) return {AbelianGroup::trivial(), AbelianGroup::rationals()};
    return summands::enumerate_summands(g);
}

} // namespace

std::vector<ExprPtr> dominated_types(const SpaceExpr& e) {
    const NormalForm nf = normalize(e);
    if (nf.kind == NormalForm::Kind::PointForm) return {point()};
    if (nf.kind == NormalForm::Kind::Unclassified)
        throw Error(ErrorCode::Unsupported, "dominated_types: capacity is not known to be finite");
    const bool moore_side = nf.kind == NormalForm::Kind::MooreWedge;

    std::vector<std::uint64_t> degrees;
    std::vector<std::vector<AbelianGroup>> choices;
    for (const auto& [deg, g] : nf.groups) {
        if (g.has_infinite_rank())
            throw Error(ErrorCode::Unsupported, "dominated_types: capacity is infinite");
        degrees.push_back(deg);
        choices.push_back(summand_classes(g));
    }

    std::vector<ExprPtr> out;
    std::vector<std::size_t> pick(degrees.size(), 0);
    for (;;) {
        std::vector<ExprPtr> atoms;
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            const AbelianGroup& b = choices[i][pick[i]];
            if (!b.is_trivial()) atoms.push_back(canonical_atom(moore_side, degrees[i], b));
        }
        if (atoms.empty()) out.push_back(point());
        else if (atoms.size() == 1) out.push_back(atoms.front());
        else out.push_back(moore_side ? wedge(std::move(atoms)) : product(std::move(atoms)));

        // lowest degree varies fastest
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) return out;
    }
}

fga::AbelianGroup homology(const SpaceExpr& e, std::uint64_t i) {
    if (i < 1) throw Error(ErrorCode::Domain, "homology: degree must be >= 1 (reduced homology)");
    const NormalForm nf = normalize(e);
    if (nf.kind == NormalForm::Kind::PointForm) return AbelianGroup::trivial();
    if (nf.kind != NormalForm::Kind::MooreWedge)
        throw Error(ErrorCode::Unsupported, "homology: only Moore-type spaces are supported");
    auto it = nf.groups.find(i);
    return it == nf.groups.end() ? AbelianGroup::trivial() : it->second;
}

fga::AbelianGroup homotopy_group(const SpaceExpr& e, std::uint64_t i) {
    if (i < 1) throw Error(ErrorCode::Domain, "homotopy_group: degree must be >= 1");
    const NormalForm nf = normalize(e);
    if (nf.kind == NormalForm::Kind::PointForm) return AbelianGroup::trivial();
    if (nf.kind != NormalForm::Kind::EMProduct)
        throw Error(ErrorCode::Unsupported, "homotopy_group: only Eilenberg-MacLane-type spaces are supported");
    auto it = nf.groups.find(i);
    return it == nf.groups.end() ? AbelianGroup::trivial() : it->second;
}

ExprPtr moore_pseudoprojective_form(const SpaceExpr& m) {
    const NormalForm nf = normalize(m);
    if (nf.kind == NormalForm::Kind::PointForm) return point();
    if (nf.kind != NormalForm::Kind::MooreWedge || nf.groups.size() != 1)
        throw Error(ErrorCode::Unsupported, "moore_pseudoprojective_form: expected a single Moore atom");
    const auto& [degree, g] = *nf.groups.begin();
    if (!g.is_fg())
        throw Error(ErrorCode::Unsupported, "moore_pseudoprojective_form: group must be finitely generated");

    std::vector<ExprPtr> planes;
    for (const auto& [pp, mult] : g.torsion()) {
        const Int q = pp.value();
        for (std::uint64_t i = 0; i < mult; ++i)
            planes.push_back(pseudo_projective(q.convert_to<std::uint64_t>()));
    }
    for (std::uint64_t i = 0; i < g.free_rank(); ++i) planes.push_back(pseudo_projective(0));

    ExprPtr body = planes.size() == 1 ? planes.front() : wedge(std::move(planes));
    return suspension(degree - 1, std::move(body));
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw_syntax(std::string("expected '") + c + "' " + what, pos);
    }
    bool accept_word(const char* w) {
        skip_ws();
        const std::size_t len = std::char_traits<char>::length(w);
        if (s.compare(pos, len, w) == 0) {
            pos += len;
            return true;
        }
        return false;
    }
    std::uint64_t nat(const char* what) {
        skip_ws();
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw_syntax(std::string("expected a number for ") + what, start);
        const Int v(s.substr(start, pos - start));
        if (v > 1'000'000'000) throw Error(ErrorCode::ResourceLimit, "number too large", start);
        return v.convert_to<std::uint64_t>();
    }

    AbelianGroup group_literal() {
        skip_ws();
        const std::size_t start = pos;
        const std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) throw_syntax("expected ',' after the group literal", s.size());
        const std::string lit = s.substr(start, comma - start);
        pos = comma;
        try {
            return fga::parse_group(lit);
        } catch (const Error& err) {
            throw Error(err.code(), err.what(), start + err.offset().value_or(0));
        }
    }

    ExprPtr expr() {
        std::vector<ExprPtr> parts{prod()};
        while (accept('v')) parts.push_back(prod());
        return parts.size() == 1 ? parts.front() : wedge(std::move(parts));
    }

    ExprPtr prod() {
        std::vector<ExprPtr> parts{atom()};
        while (accept('x')) parts.push_back(atom());
        return parts.size() == 1 ? parts.front() : product(std::move(parts));
    }

    ExprPtr atom() {
        skip_ws();
        const std::size_t start = pos;
        try {
            if (accept_word("susp")) {
                std::uint64_t t = 1;
                if (accept('^')) t = nat("the suspension count");
                expect('(', "after susp");
                ExprPtr inner = expr();
                expect(')', "to close susp");
                return suspension(t, std::move(inner));
            }
            if (accept_word("pt")) return point();
            if (accept('S')) {
                expect('^', "after S");
                return sphere(nat("the sphere dimension"));
            }
            if (accept('T')) {
                expect('^', "after T");
                return torus(nat("the torus rank"));
            }
            if (accept('P')) {
                expect('_', "after P");
                return pseudo_projective(nat("the pseudo-projective order"));
            }
            if (accept('M') || accept('K')) {
                const bool is_moore = s[pos - 1] == 'M';
                expect('(', is_moore ? "after M" : "after K");
                AbelianGroup g = group_literal();
                expect(',', "after the group");
                const std::uint64_t n = nat("the degree");
                expect(')', "to close the atom");
                return is_moore ? moore(std::move(g), n) : em(std::move(g), n);
            }
            if (accept('(')) {
                ExprPtr inner = expr();
                expect(')', "to close the parenthesis");
                return inner;
            }
        } catch (const Error& err) {
            if (err.offset()) throw;
            throw Error(err.code(), err.what(), start);
        }
        throw_syntax("expected a space atom (S^n, M(...), K(...), T^k, P_q, pt, susp, or '(')", pos);
    }
};

int precedence(SpaceExpr::Kind k) {
    switch (k) {
    case SpaceExpr::Kind::Wedge: return 0;
    case SpaceExpr::Kind::Product: return 1;
    default: return 2;
    }
}

void print_to(const SpaceExpr& e, std::ostringstream& out, int min_prec) {
    const int prec = precedence(e.kind);
    const bool parens = prec < min_prec;
    if (parens) out << "(";
    switch (e.kind) {
    case SpaceExpr::Kind::Point: out << "pt"; break;
    case SpaceExpr::Kind::Sphere: out << "S^" << e.n; break;
    case SpaceExpr::Kind::Moore: out << "M(" << fga::to_string(e.group) << ", " << e.n << ")"; break;
    case SpaceExpr::Kind::EM: out << "K(" << fga::to_string(e.group) << ", " << e.n << ")"; break;
    case SpaceExpr::Kind::Torus: out << "T^" << e.n; break;
    case SpaceExpr::Kind::PseudoProjective: out << "P_" << e.n; break;
    case SpaceExpr::Kind::Suspension:
        out << "susp^" << e.n << "(";
        print_to(*e.children[0], out, 0);
        out << ")";
        break;
    case SpaceExpr::Kind::Wedge:
    case SpaceExpr::Kind::Product: {
        const char* op = e.kind == SpaceExpr::Kind::Wedge ? " v " : " x ";
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            if (i) out << op;
            print_to(*e.children[i], out, prec + 1);
        }
        break;
    }
    }
    if (parens) out << ")";
}

} // namespace

ExprPtr parse(const std::string& text) {
    Parser p{text};
    ExprPtr e = p.expr();
    if (!p.eof()) throw_syntax("unexpected trailing input", p.pos);
    return e;
}

std::string print(const SpaceExpr& e) {
    std::ostringstream out;
    print_to(e, out, 0);
    return out.str();
}

} // namespace capax::spaces
