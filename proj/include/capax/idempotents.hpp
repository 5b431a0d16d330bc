#pragma once

#include <optional>
#include <string>

#include "capax/fga.hpp"
#include "capax/matrix.hpp"
#include "capax/spaces.hpp"
#include "capax/summands.hpp"

namespace capax::idempotents {

struct IdempotentCount {
    bool is_infinite = false;
    Int value = 0;
    std::string witness; // family description when infinite

    bool operator==(const IdempotentCount&) const = default;
};

struct IdempotentReport {
    fga::AbelianGroup group;
    IdempotentCount count;
    spaces::CapacityResult em_capacity;       // capacity of K(group, 1)
    std::optional<bool> bound_holds;          // capacity <= count when both finite
};

// Number of endomorphisms f of g with f o f = f. Finite groups are swept
// exactly; Z^0 -> 1, Z -> 2; Z^r (r >= 2) is infinite with the 2x2 witness
// family embedded in the top-left block. Other groups are unsupported.
IdempotentCount count_idempotent_endos(const fga::AbelianGroup& g,
                                       const summands::OracleOptions& opt = {});

IdempotentReport bound_report(const fga::AbelianGroup& g,
                              const summands::OracleOptions& opt = {});

// Member of the infinite idempotent family on Z^2: [[1, n], [0, 0]].
IntMatrix witness_matrix(long long n);

} // namespace capax::idempotents
