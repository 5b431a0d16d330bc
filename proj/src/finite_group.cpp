#include "capax/finite_group.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "capax/error.hpp"

namespace capax::summands {

FiniteGroup::FiniteGroup(const fga::AbelianGroup& g) {
    if (!g.is_finite()) throw Error(ErrorCode::Unsupported, "FiniteGroup: group is not finite");
    for (const auto& [pp, mult] : g.torsion()) {
        const Int v = pp.value();
        for (std::uint64_t i = 0; i < mult; ++i) moduli_.push_back(v.convert_to<std::uint64_t>());
    }
    Int n = g.order();
    if (n > std::numeric_limits<std::uint64_t>::max())
        throw Error(ErrorCode::ResourceLimit, "FiniteGroup: order exceeds 64 bits");
    order_ = n.convert_to<std::uint64_t>();
}

std::vector<std::uint64_t> FiniteGroup::decode(std::uint64_t idx) const {
    std::vector<std::uint64_t> c(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        c[i] = idx % moduli_[i];
        idx /= moduli_[i];
    }
    return c;
}

std::uint64_t FiniteGroup::encode(const std::vector<std::uint64_t>& coords) const {
    std::uint64_t idx = 0;
    for (std::size_t i = moduli_.size(); i-- > 0;) idx = idx * moduli_[i] + coords[i] % moduli_[i];
    return idx;
}

std::uint64_t FiniteGroup::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0, scale = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::uint64_t m = moduli_[i];
        out += ((a % m + b % m) % m) * scale;
        a /= m;
        b /= m;
        scale *= m;
    }
    return out;
}

std::uint64_t FiniteGroup::element_order(std::uint64_t a) const {
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::uint64_t m = moduli_[i];
        const std::uint64_t x = a % m;
        a /= m;
        const std::uint64_t o = m / std::gcd(m, x == 0 ? m : x);
        ord = std::lcm(ord, o == 0 ? 1 : o);
    }
    return ord;
}

std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n) {
    if (n == 0) return {{}};
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    // parts nonincreasing, largest first
    auto rec = [&](auto&& self, std::uint32_t rest, std::uint32_t maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

std::vector<fga::AbelianGroup> enumerate_finite_abelian_groups(std::uint64_t max_order) {
    std::vector<fga::AbelianGroup> out;
    for (std::uint64_t n = 1; n <= max_order; ++n) {
        const auto factor = fga::primary_decomposition({Int(n) < 2 ? Int(2) : Int(n)});
        std::vector<fga::AbelianGroup> partial{fga::AbelianGroup::trivial()};
        if (n == 1) {
            out.push_back(fga::AbelianGroup::trivial());
            continue;
        }
        // factor maps each prime p to exponent e (as PrimePower(p, e), mult 1)
        for (const auto& [pp, mult] : factor) {
            (void)mult;
            std::vector<fga::AbelianGroup> next;
            for (const auto& part : partitions(pp.exponent)) {
                fga::AbelianGroup::Torsion t;
                for (std::uint32_t e : part) ++t[fga::PrimePower(pp.prime, e)];
                const fga::AbelianGroup comp(0, std::move(t));
                for (const auto& base : partial) next.push_back(fga::direct_sum(base, comp));
            }
            partial = std::move(next);
        }
        std::sort(partial.begin(), partial.end());
        out.insert(out.end(), partial.begin(), partial.end());
    }
    return out;
}

namespace {

using OrderStats = std::map<std::uint64_t, std::uint64_t>;

const std::vector<std::pair<fga::AbelianGroup, OrderStats>>& candidates_for_order(std::uint64_t n) {
    static std::map<std::uint64_t, std::vector<std::pair<fga::AbelianGroup, OrderStats>>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<fga::AbelianGroup, OrderStats>> table;
    for (const auto& cand : enumerate_finite_abelian_groups(n)) {
        if (cand.order() != n) continue;
        const FiniteGroup cg(cand);
        OrderStats cstats;
        for (std::uint64_t e = 0; e < cg.order(); ++e) ++cstats[cg.element_order(e)];
        table.emplace_back(cand, std::move(cstats));
    }
    return cache.emplace(n, std::move(table)).first->second;
}

} // namespace

fga::AbelianGroup classify_by_element_orders(const FiniteGroup& g,
                                             const std::vector<std::uint64_t>& elements) {
    OrderStats stats;
    for (std::uint64_t e : elements) ++stats[g.element_order(e)];
    const std::uint64_t n = elements.size();

    // The order multiset is a complete invariant of a finite abelian group.
    const fga::AbelianGroup* match = nullptr;
    for (const auto& [cand, cstats] : candidates_for_order(n)) {
        if (cstats != stats) continue;
        if (match) throw Error(ErrorCode::Invariant, "classify_by_element_orders: ambiguous match");
        match = &cand;
    }
    if (!match) throw Error(ErrorCode::Invariant, "classify_by_element_orders: no abelian group matches");
    return *match;
}

namespace {

// Subgroup generated by an existing subgroup and one extra element.
std::vector<std::uint64_t> extend_subgroup(const FiniteGroup& g,
                                           const std::vector<std::uint64_t>& base,
                                           std::uint64_t x) {
    std::set<std::uint64_t> s(base.begin(), base.end());
    const std::uint64_t ord = g.element_order(x);
    std::uint64_t mx = 0;
    for (std::uint64_t t = 0; t < ord; ++t) {
        for (std::uint64_t b : base) s.insert(g.add(b, mx));
        mx = g.add(mx, x);
    }
    return {s.begin(), s.end()};
}

} // namespace

std::vector<std::vector<std::uint64_t>> all_subgroups(const FiniteGroup& g) {
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<std::vector<std::uint64_t>> queue{{0}};
    seen.insert(queue.front());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto cur = queue[qi];
        for (std::uint64_t x = 1; x < g.order(); ++x) {
            if (std::binary_search(cur.begin(), cur.end(), x)) continue;
            auto bigger = extend_subgroup(g, cur, x);
            if (seen.insert(bigger).second) queue.push_back(std::move(bigger));
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace capax::summands
