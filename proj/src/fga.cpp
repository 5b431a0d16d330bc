#include "capax/fga.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "capax/error.hpp"

namespace capax::fga {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimePower::PrimePower(std::uint64_t p, std::uint32_t e) : prime(p), exponent(e) {
    if (!is_prime_u64(p)) throw Error(ErrorCode::Domain, "PrimePower: " + std::to_string(p) + " is not prime");
    if (e < 1) throw Error(ErrorCode::Domain, "PrimePower: exponent must be >= 1");
}

Int PrimePower::value() const {
    Int v = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) v *= prime;
    return v;
}

AbelianGroup::AbelianGroup(std::uint64_t free_rank, Torsion torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (auto it = torsion_.begin(); it != torsion_.end();) {
        if (it->second == 0) it = torsion_.erase(it);
        else ++it;
    }
}

AbelianGroup AbelianGroup::free_infinite() {
    AbelianGroup g;
    g.infinite_rank_ = true;
    return g;
}

AbelianGroup AbelianGroup::rationals() {
    AbelianGroup g;
    g.rationals_ = true;
    return g;
}

bool AbelianGroup::is_trivial() const {
    return !rationals_ && !infinite_rank_ && free_rank_ == 0 && torsion_.empty();
}

AbelianGroup AbelianGroup::cyclic(const Int& m) {
    if (m < 0) throw Error(ErrorCode::Domain, "cyclic: order must be >= 0");
    if (m == 0) return free_group(1);
    if (m == 1) return trivial();
    return AbelianGroup(0, primary_decomposition({m}));
}

Int AbelianGroup::order() const {
    if (!is_finite()) throw Error(ErrorCode::Unsupported, "order: group is not finite");
    Int n = 1;
    for (const auto& [pp, mult] : torsion_) {
        Int v = pp.value();
        for (std::uint64_t i = 0; i < mult; ++i) n *= v;
    }
    return n;
}

bool AbelianGroup::operator<(const AbelianGroup& o) const {
    auto key = [](const AbelianGroup& g) {
        return std::tie(g.rationals_, g.infinite_rank_, g.free_rank_, g.torsion_);
    };
    return key(*this) < key(o);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// True if every entry of the submatrix d[t+1.., t+1..] is divisible by pivot,
// otherwise reports an offending row.
bool submatrix_divisible(const IntMatrix& d, std::size_t t, std::size_t& bad_row) {
    const Int& pivot = d(t, t);
    for (std::size_t i = t + 1; i < d.rows(); ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
            if (d(i, j) % pivot != 0) {
                bad_row = i;
                return false;
            }
    return true;
}

} // namespace

SNFResult smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SNFResult r{a, IntMatrix::identity(m), IntMatrix::identity(n)};
    IntMatrix& d = r.d;

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero |entry| in d[t.., t..]; lowest (i, j) on ties.
            std::size_t pi = t, pj = t;
            Int best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Int v = abs(d(i, j));
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) {
                t = steps; // remaining block is zero
                break;
            }
            if (pi != t) {
                d.swap_rows(t, pi);
                r.u.swap_rows(t, pi);
            }
            if (pj != t) {
                d.swap_cols(t, pj);
                r.v.swap_cols(t, pj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                const Int q = d(i, t) / d(t, t);
                d.add_row(i, t, q);
                r.u.add_row(i, t, q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                const Int q = d(t, j) / d(t, t);
                d.add_col(j, t, q);
                r.v.add_col(j, t, q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = 0;
            if (!submatrix_divisible(d, t, bad)) {
                // Pull the offending row into row t so the next pivot pass
                // shrinks the pivot to a common divisor.
                d.add_row(t, bad, Int(-1));
                r.u.add_row(t, bad, Int(-1));
                continue;
            }
            break;
        }
        if (t >= steps) break;
    }
    for (std::size_t t = 0; t < steps; ++t) {
        if (d(t, t) < 0) {
            d.negate_row(t);
            r.u.negate_row(t);
        }
    }
    return r;
}

std::vector<Int> invariant_factors(const IntMatrix& a) {
    const IntMatrix d = smith_normal_form(a).d;
    std::vector<Int> out;
    for (std::size_t t = 0; t < std::min(d.rows(), d.cols()); ++t)
        if (d(t, t) != 0) out.push_back(d(t, t));
    return out;
}

AbelianGroup group_from_presentation(const RelationPresentation& p) {
    if (p.relations.rows() > 0 && p.relations.cols() != p.generators)
        throw Error(ErrorCode::Invariant, "presentation: relation width != generator count");
    const std::vector<Int> factors = invariant_factors(p.relations);
    std::vector<Int> nonunit;
    for (const Int& f : factors)
        if (f > 1) nonunit.push_back(f);
    const std::uint64_t free_rank = p.generators - factors.size();
    return AbelianGroup(free_rank, primary_decomposition(nonunit));
}

AbelianGroup::Torsion primary_decomposition(const std::vector<Int>& factors) {
    AbelianGroup::Torsion out;
    for (const Int& f : factors) {
        if (f < 2) throw Error(ErrorCode::Domain, "primary_decomposition: factor must be >= 2");
        if (f > std::numeric_limits<std::uint64_t>::max())
            throw Error(ErrorCode::ResourceLimit, "primary_decomposition: torsion order exceeds 64 bits");
        std::uint64_t n = f.convert_to<std::uint64_t>();
        for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
            if (n % p != 0) continue;
            std::uint32_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            ++out[PrimePower(p, e)];
        }
        if (n > 1) ++out[PrimePower(n, 1)];
    }
    return out;
}

AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h) {
    if (g.is_rationals() || h.is_rationals()) {
        const AbelianGroup& other = g.is_rationals() ? h : g;
        if (other.is_trivial()) return AbelianGroup::rationals();
        throw Error(ErrorCode::Unsupported, "direct_sum: Q is only supported as a standalone atom");
    }
    if (g.has_infinite_rank() || h.has_infinite_rank()) {
        if (!g.torsion().empty() || !h.torsion().empty())
            throw Error(ErrorCode::Unsupported, "direct_sum: omega rank with torsion is not supported");
        return AbelianGroup::free_infinite();
    }
    AbelianGroup::Torsion t = g.torsion();
    for (const auto& [pp, mult] : h.torsion()) t[pp] += mult;
    return AbelianGroup(g.free_rank() + h.free_rank(), std::move(t));
}

bool is_isomorphic(const AbelianGroup& g, const AbelianGroup& h) { return g == h; }

bool is_hopfian(const AbelianGroup& g) { return !g.has_infinite_rank(); }

// ---------------------------------------------------------------------------
// Group literals

namespace {

struct Cursor {
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
    Int number() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw_syntax("expected a number", start);
        return Int(s.substr(start, pos - start));
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            pos += w.size();
            return true;
        }
        return false;
    }
};

std::uint64_t to_u64(const Int& n, const Cursor& c) {
    if (n > std::numeric_limits<std::uint64_t>::max())
        throw Error(ErrorCode::ResourceLimit, "exponent too large", c.pos);
    return n.convert_to<std::uint64_t>();
}

AbelianGroup parse_group_term(Cursor& c) {
    c.skip_ws();
    const std::size_t start = c.pos;
    if (c.accept('0')) return AbelianGroup::trivial();
    if (c.accept('Q')) {
        if (c.peek() == '^') throw_syntax("Q does not take a repetition exponent", c.pos);
        return AbelianGroup::rationals();
    }
    if (!c.accept('Z')) throw_syntax("expected a group atom (0, Z, Z_m or Q)", start);
    AbelianGroup base = AbelianGroup::free_group(1);
    bool is_free_z = true;
    if (c.accept('_')) {
        const std::size_t mpos = c.pos;
        const Int m = c.number();
        if (m < 2) throw_syntax("Z_m requires m >= 2", mpos);
        base = AbelianGroup::cyclic(m);
        is_free_z = false;
    }
    if (c.accept('^')) {
        if (c.accept_word("inf")) {
            if (!is_free_z) throw_syntax("^inf is only allowed on Z", c.pos);
            return AbelianGroup::free_infinite();
        }
        const std::uint64_t k = to_u64(c.number(), c);
        if (is_free_z) return AbelianGroup::free_group(k);
        AbelianGroup::Torsion t;
        for (const auto& [pp, mult] : base.torsion()) t[pp] = mult * k;
        return AbelianGroup(0, std::move(t));
    }
    return base;
}

} // namespace

AbelianGroup parse_group(const std::string& text) {
    Cursor c{text};
    AbelianGroup g = parse_group_term(c);
    while (!c.eof()) {
        if (!c.accept('+')) throw_syntax("expected '+' between group terms", c.pos);
        g = direct_sum(g, parse_group_term(c));
    }
    return g;
}

std::string to_string(const AbelianGroup& g) {
    if (g.is_rationals()) return "Q";
    std::vector<std::string> terms;
    for (const auto& [pp, mult] : g.torsion()) {
        std::ostringstream t;
        t << "Z_" << pp.value();
        if (mult > 1) t << "^" << mult;
        terms.push_back(t.str());
    }
    if (g.has_infinite_rank()) {
        terms.push_back("Z^inf");
    } else if (g.free_rank() == 1) {
        terms.push_back("Z");
    } else if (g.free_rank() > 1) {
        terms.push_back("Z^" + std::to_string(g.free_rank()));
    }
    if (terms.empty()) return "0";
    std::string out = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
    return out;
}

} // namespace capax::fga
