#include "capax/summands.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "capax/error.hpp"

namespace capax::summands {

SummandCount count_summands(const fga::AbelianGroup& g) {
    if (g.is_rationals()) return SummandCount::finite(2);
    if (g.has_infinite_rank()) return SummandCount::infinite();
    Int n = g.free_rank() + 1;
    for (const auto& [pp, mult] : g.torsion()) {
        (void)pp;
        n *= Int(mult) + 1;
    }
    return SummandCount::finite(n);
}

std::vector<fga::AbelianGroup> enumerate_summands(const fga::AbelianGroup& g) {
    if (!g.is_fg())
        throw Error(ErrorCode::Unsupported, "enumerate_summands: group must be finitely generated");
    std::vector<fga::PrimePower> comps;
    std::vector<std::uint64_t> maxes;
    for (const auto& [pp, mult] : g.torsion()) {
        comps.push_back(pp);
        maxes.push_back(mult);
    }
    maxes.push_back(g.free_rank()); // free part last, fastest-varying

    std::vector<fga::AbelianGroup> out;
    std::vector<std::uint64_t> pick(maxes.size(), 0);
    for (;;) {
        fga::AbelianGroup::Torsion t;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (pick[i] > 0) t[comps[i]] = pick[i];
        out.emplace_back(pick.back(), std::move(t));
        // odometer with the last coordinate fastest
        std::size_t i = maxes.size();
        while (i-- > 0) {
            if (pick[i] < maxes[i]) {
                ++pick[i];
                std::fill(pick.begin() + i + 1, pick.end(), 0);
                break;
            }
            if (i == 0) return out;
        }
    }
}

bool is_valid_endo(const FiniteGroup& g, const EndoMatrix& m) {
    const auto& d = g.moduli();
    const std::size_t r = d.size();
    if (m.entries.size() != r) return false;
    for (std::size_t i = 0; i < r; ++i) {
        if (m.entries[i].size() != r) return false;
        for (std::size_t j = 0; j < r; ++j) {
            const std::uint64_t step = d[i] / std::gcd(d[i], d[j]);
            if (m.entries[i][j] >= d[i] || m.entries[i][j] % step != 0) return false;
        }
    }
    return true;
}

EndoMatrix compose(const FiniteGroup& g, const EndoMatrix& f, const EndoMatrix& h) {
    const auto& d = g.moduli();
    const std::size_t r = d.size();
    EndoMatrix out;
    out.entries.assign(r, std::vector<std::uint64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < r; ++k)
                acc = (acc + f.entries[i][k] * h.entries[k][j]) % d[i];
            out.entries[i][j] = acc;
        }
    return out;
}

bool is_idempotent(const FiniteGroup& g, const EndoMatrix& m) {
    return compose(g, m, m).entries == m.entries;
}

fga::AbelianGroup image_of_endomorphism(const fga::AbelianGroup& g, const EndoMatrix& m) {
    const FiniteGroup fg(g);
    if (!is_valid_endo(fg, m))
        throw Error(ErrorCode::Invariant, "image_of_endomorphism: matrix violates the Hom congruences");
    const std::size_t r = fg.rank();
    if (r == 0) return fga::AbelianGroup::trivial();

    // Column lattice L of [M | D] in Z^r satisfies im(m) = L / D Z^r.
    // With U [M|D] V = diag(s), the columns of U^{-1} diag(s) are a basis
    // of L; rewriting D in that basis gives the relation matrix
    // W = diag(1/s) U D, and im(m) is the cokernel of W.
    IntMatrix md(r, 2 * r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) md(i, j) = m.entries[i][j];
        md(i, r + i) = fg.moduli()[i];
    }
    const fga::SNFResult snf = fga::smith_normal_form(md);

    IntMatrix dd(r, r);
    for (std::size_t i = 0; i < r; ++i) dd(i, i) = fg.moduli()[i];
    IntMatrix w = snf.u * dd;
    for (std::size_t i = 0; i < r; ++i) {
        const Int s = snf.d(i, i);
        for (std::size_t j = 0; j < r; ++j) {
            if (w(i, j) % s != 0)
                throw Error(ErrorCode::Invariant, "image_of_endomorphism: lattice division not exact");
            w(i, j) /= s;
        }
    }
    return fga::group_from_presentation({r, w.transposed()});
}

namespace {

std::vector<std::uint64_t> image_elements(const FiniteGroup& g, const EndoMatrix& m) {
    const auto& d = g.moduli();
    const std::size_t r = d.size();
    std::set<std::uint64_t> img;
    for (std::uint64_t e = 0; e < g.order(); ++e) {
        const auto x = g.decode(e);
        std::vector<std::uint64_t> y(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < r; ++j) acc = (acc + m.entries[i][j] * x[j]) % d[i];
            y[i] = acc;
        }
        img.insert(g.encode(y));
    }
    return {img.begin(), img.end()};
}

OracleResult sweep_by_matrices(const FiniteGroup& fg) {
    const auto& d = fg.moduli();
    const std::size_t r = d.size();
    std::vector<std::uint64_t> steps(r * r), counts(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const std::uint64_t gij = std::gcd(d[i], d[j]);
            steps[i * r + j] = d[i] / gij;
            counts[i * r + j] = gij;
        }

    OracleResult res;
    std::set<fga::AbelianGroup> classes;
    EndoMatrix m;
    m.entries.assign(r, std::vector<std::uint64_t>(r, 0));
    std::vector<std::uint64_t> idx(r * r, 0);
    for (;;) {
        if (is_idempotent(fg, m)) {
            res.idempotent_count += 1;
            classes.insert(classify_by_element_orders(fg, image_elements(fg, m)));
        }
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
            if (++idx[k] < counts[k]) {
                m.entries[k / r][k % r] = idx[k] * steps[k];
                break;
            }
            idx[k] = 0;
            m.entries[k / r][k % r] = 0;
        }
        if (k == idx.size()) break;
    }
    res.image_classes.assign(classes.begin(), classes.end());
    return res;
}

// Idempotents of an abelian group correspond bijectively to ordered direct
// decompositions G = H + K (the projection onto H along K), so sweeping
// complement pairs of subgroups enumerates the same set.
OracleResult sweep_by_complements(const FiniteGroup& fg) {
    const auto subs = all_subgroups(fg);
    const std::uint64_t n = fg.order();

    OracleResult res;
    std::set<fga::AbelianGroup> classes;
    for (const auto& h : subs) {
        std::uint64_t complements = 0;
        for (const auto& k : subs) {
            if (static_cast<std::uint64_t>(h.size()) * k.size() != n) continue;
            // H + K = G follows from |H||K| = |G| once H and K meet trivially.
            std::vector<std::uint64_t> common;
            std::set_intersection(h.begin(), h.end(), k.begin(), k.end(), std::back_inserter(common));
            if (common.size() == 1) ++complements;
        }
        if (complements > 0) {
            res.idempotent_count += complements;
            classes.insert(classify_by_element_orders(fg, h));
        }
    }
    res.image_classes.assign(classes.begin(), classes.end());
    return res;
}

} // namespace

OracleResult idempotent_sweep(const fga::AbelianGroup& g, const OracleOptions& opt) {
    if (!g.is_finite())
        throw Error(ErrorCode::Unsupported, "idempotent_sweep: group must be finite");
    if (g.order() > opt.order_cap)
        throw Error(ErrorCode::ResourceLimit,
                    "idempotent_sweep: order exceeds the oracle cap (" + std::to_string(opt.order_cap) + ")");
    const FiniteGroup fg(g);
    Int endo_count = 1;
    for (std::uint64_t di : fg.moduli())
        for (std::uint64_t dj : fg.moduli()) endo_count *= std::gcd(di, dj);
    if (endo_count <= opt.endo_sweep_limit) return sweep_by_matrices(fg);
    return sweep_by_complements(fg);
}

std::uint64_t oracle_count_summands(const fga::AbelianGroup& g, const OracleOptions& opt) {
    return idempotent_sweep(g, opt).image_classes.size();
}

} // namespace capax::summands
