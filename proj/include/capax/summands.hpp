#pragma once

#include <cstdint>
#include <vector>

#include "capax/fga.hpp"
#include "capax/finite_group.hpp"

namespace capax::summands {

// Cardinal that may be omega.
struct SummandCount {
    bool is_infinite = false;
    Int value = 1;

    static SummandCount infinite() { return {true, 0}; }
    static SummandCount finite(Int v) { return {false, std::move(v)}; }

    bool operator==(const SummandCount&) const = default;
};

// Number of direct summands of g up to isomorphism:
// product over primary components of (multiplicity + 1), times
// (free_rank + 1); Q has 2; omega rank gives omega.
SummandCount count_summands(const fga::AbelianGroup& g);

// All summands of a f.g. group up to isomorphism, deterministic order:
// primary components sorted by (prime, exponent), selections lexicographic
// in (t_1, ..., t_n, s). Length equals count_summands(g).
std::vector<fga::AbelianGroup> enumerate_summands(const fga::AbelianGroup& g);

// Endomorphism of a finite group with primary moduli d_1..d_r:
// entries[i][j] in [0, d_i) and a multiple of d_i / gcd(d_i, d_j),
// so that e_j -> sum_i entries[i][j] e_i is well defined.
struct EndoMatrix {
    std::vector<std::vector<std::uint64_t>> entries;
};

bool is_valid_endo(const FiniteGroup& g, const EndoMatrix& m);
EndoMatrix compose(const FiniteGroup& g, const EndoMatrix& f, const EndoMatrix& h);
bool is_idempotent(const FiniteGroup& g, const EndoMatrix& m);

// Canonical form of im(m) inside g, computed by SNF on the combined
// generator/relation lattice (no element enumeration).
fga::AbelianGroup image_of_endomorphism(const fga::AbelianGroup& g, const EndoMatrix& m);

struct OracleOptions {
    std::uint64_t order_cap = 64;
    // Direct matrix sweeps above this many endomorphisms switch to the
    // equivalent complement-pair enumeration.
    std::uint64_t endo_sweep_limit = std::uint64_t(1) << 22;
};

struct OracleResult {
    Int idempotent_count = 0;
    std::vector<fga::AbelianGroup> image_classes; // sorted, pairwise distinct
};

// Brute-force sweep of the idempotent endomorphisms of a finite group:
// their images are exactly the direct summands. Counts raw idempotents and
// collects the distinct isomorphism classes of their images.
OracleResult idempotent_sweep(const fga::AbelianGroup& g, const OracleOptions& opt = {});

// Distinct isomorphism classes among idempotent images; the independent
// check of count_summands for finite groups of order <= opt.order_cap.
std::uint64_t oracle_count_summands(const fga::AbelianGroup& g, const OracleOptions& opt = {});

} // namespace capax::summands
