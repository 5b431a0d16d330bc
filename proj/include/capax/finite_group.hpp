#pragma once

#include <cstdint>
#include <vector>

#include "capax/fga.hpp"

namespace capax::summands {

// Concrete element-level model of a finite abelian group as
// Z_{d_1} x ... x Z_{d_r} with primary cyclic moduli d_i, sorted by
// (prime, exponent). Elements are mixed-radix indices in [0, order).
class FiniteGroup {
public:
    explicit FiniteGroup(const fga::AbelianGroup& g);

    const std::vector<std::uint64_t>& moduli() const { return moduli_; }
    std::uint64_t order() const { return order_; }
    std::size_t rank() const { return moduli_.size(); }

    std::vector<std::uint64_t> decode(std::uint64_t idx) const;
    std::uint64_t encode(const std::vector<std::uint64_t>& coords) const;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t element_order(std::uint64_t a) const;

private:
    std::vector<std::uint64_t> moduli_;
    std::uint64_t order_;
};

// Classify a subgroup given as an element-id list, by matching its
// element-order multiset against all abelian groups of that order.
// Independent of the SNF pipeline.
fga::AbelianGroup classify_by_element_orders(const FiniteGroup& g,
                                             const std::vector<std::uint64_t>& elements);

// Every subgroup of g, each as a sorted element-id list; deterministic order.
std::vector<std::vector<std::uint64_t>> all_subgroups(const FiniteGroup& g);

// All abelian groups of order 1..max_order, sorted by (order, canonical form).
std::vector<fga::AbelianGroup> enumerate_finite_abelian_groups(std::uint64_t max_order);

// Additive partitions of n in reverse-lexicographic order ([n], ..., [1,...,1]).
std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n);

} // namespace capax::summands
