#include "capax/idempotents.hpp"

#include "capax/error.hpp"

namespace capax::idempotents {

IntMatrix witness_matrix(long long n) {
    IntMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = n;
    return m;
}

IdempotentCount count_idempotent_endos(const fga::AbelianGroup& g,
                                       const summands::OracleOptions& opt) {
    if (g.is_finite()) {
        const summands::OracleResult res = summands::idempotent_sweep(g, opt);
        return {false, res.idempotent_count, {}};
    }
    if (g.is_fg() && g.torsion().empty()) {
        // Free abelian: a^2 = a over Z forces a in {0, 1} in rank 1, and
        // rank >= 2 carries the infinite family [[1, n], [0, 0]].
        if (g.free_rank() == 0) return {false, 1, {}};
        if (g.free_rank() == 1) return {false, 2, {}};
        return {true, 0, "[[1, n], [0, 0]] for n in Z"};
    }
    throw Error(ErrorCode::Unsupported,
                "count_idempotent_endos: only finite groups and Z^r are supported");
}

IdempotentReport bound_report(const fga::AbelianGroup& g, const summands::OracleOptions& opt) {
    IdempotentReport report;
    report.group = g;
    report.count = count_idempotent_endos(g, opt);
    report.em_capacity = g.is_trivial() ? spaces::capacity(spaces::point())
                                        : spaces::capacity(spaces::em(g, 1));
    if (!report.count.is_infinite &&
        report.em_capacity.kind == spaces::CapacityResult::Kind::Finite) {
        report.bound_holds = report.em_capacity.value <= report.count.value;
    }
    return report;
}

} // namespace capax::idempotents
