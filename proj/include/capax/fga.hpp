#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "capax/matrix.hpp"

namespace capax::fga {

// p^e with p prime, e >= 1. Construction checks primality.
struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;

    PrimePower(std::uint64_t p, std::uint32_t e);

    Int value() const;

    auto operator<=>(const PrimePower&) const = default;
};

bool is_prime_u64(std::uint64_t n);

// Canonical form of a finitely generated abelian group: free rank
// (possibly the infinite marker omega) plus a multiset of primary cyclic
// components. Q is a standalone atom. Two values are isomorphic as groups
// iff they compare equal.
class AbelianGroup {
public:
    using Torsion = std::map<PrimePower, std::uint64_t>;

    AbelianGroup() : AbelianGroup(0, {}) {}
    AbelianGroup(std::uint64_t free_rank, Torsion torsion);

    static AbelianGroup trivial() { return AbelianGroup(); }
    static AbelianGroup free_group(std::uint64_t rank) { return AbelianGroup(rank, {}); }
    static AbelianGroup free_infinite();
    static AbelianGroup rationals();
    // Z_m for m >= 2 (primary-decomposed); m = 1 gives the trivial group,
    // m = 0 gives Z.
    static AbelianGroup cyclic(const Int& m);

    bool is_rationals() const { return rationals_; }
    bool is_trivial() const;
    bool has_infinite_rank() const { return infinite_rank_; }
    // Finitely generated: no omega rank, not Q.
    bool is_fg() const { return !rationals_ && !infinite_rank_; }
    bool is_finite() const { return is_fg() && free_rank_ == 0; }

    std::uint64_t free_rank() const { return free_rank_; }
    const Torsion& torsion() const { return torsion_; }

    // Order of a finite group (1 for the trivial group).
    Int order() const;

    bool operator==(const AbelianGroup&) const = default;
    bool operator<(const AbelianGroup& o) const;

private:
    bool rationals_ = false;
    bool infinite_rank_ = false;
    std::uint64_t free_rank_ = 0;
    Torsion torsion_;
};

struct RelationPresentation {
    std::uint64_t generators = 0;
    IntMatrix relations; // one relator per row, `generators` columns
};

struct SNFResult {
    IntMatrix d; // diagonal, nonnegative, d_i | d_{i+1}, zeros last
    IntMatrix u; // unimodular, rows(a) x rows(a)
    IntMatrix v; // unimodular, cols(a) x cols(a)
};

// u * a * v = d. Deterministic: smallest-|pivot| with lowest-index tie-break.
SNFResult smith_normal_form(const IntMatrix& a);

// Diagonal entries of the SNF that are >= 1, in order (unit factors kept).
std::vector<Int> invariant_factors(const IntMatrix& a);

AbelianGroup group_from_presentation(const RelationPresentation& p);

// Prime-power components of the given invariant factors, aggregated.
// Each factor must be >= 2 and its prime factors must fit in 64 bits.
AbelianGroup::Torsion primary_decomposition(const std::vector<Int>& factors);

AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h);

bool is_isomorphic(const AbelianGroup& g, const AbelianGroup& h);

bool is_hopfian(const AbelianGroup& g);

// Group literal syntax: `0`, `Z`, `Z_m`, `Q`, `+`, `^k`, `^inf` (on Z only).
AbelianGroup parse_group(const std::string& text);
// Canonical printer; parse_group(to_string(g)) == g.
std::string to_string(const AbelianGroup& g);

} // namespace capax::fga
