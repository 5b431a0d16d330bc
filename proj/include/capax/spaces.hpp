#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "capax/fga.hpp"

namespace capax::spaces {

struct SpaceExpr;
using ExprPtr = std::shared_ptr<const SpaceExpr>;

// AST of a space expression. Factory functions validate the node
// invariants (Moore degree >= 2, nonempty wedge/product, ...).
struct SpaceExpr {
    enum class Kind {
        Point,
        Sphere,          // n >= 1
        Moore,           // M(group, n), n >= 2
        EM,              // K(group, n), n >= 1
        Torus,           // T^k, k >= 1
        PseudoProjective, // P_q, q >= 0
        Suspension,      // susp^t(inner), t >= 1
        Wedge,
        Product,
    };

    Kind kind;
    std::uint64_t n = 0; // dimension / degree / torus rank / q / suspension count
    fga::AbelianGroup group;
    std::vector<ExprPtr> children;

    bool operator==(const SpaceExpr& o) const;
};

ExprPtr point();
ExprPtr sphere(std::uint64_t n);
ExprPtr moore(fga::AbelianGroup a, std::uint64_t n);
ExprPtr em(fga::AbelianGroup g, std::uint64_t n);
ExprPtr torus(std::uint64_t k);
ExprPtr pseudo_projective(std::uint64_t q);
ExprPtr suspension(std::uint64_t times, ExprPtr inner);
ExprPtr wedge(std::vector<ExprPtr> children);
ExprPtr product(std::vector<ExprPtr> children);

struct NormalForm {
    enum class Kind { MooreWedge, EMProduct, PointForm, Unclassified };

    Kind kind = Kind::PointForm;
    std::map<std::uint64_t, fga::AbelianGroup> groups; // degree -> merged group
    std::string reason;      // human text for Unclassified
    std::string reason_code; // open-problem | unsupported-mix | q-sum

    static NormalForm unclassified(std::string code, std::string text);

    bool operator==(const NormalForm&) const = default;
};

struct CapacityResult {
    enum class Kind { Finite, Infinite, Unknown };

    Kind kind = Kind::Finite;
    Int value = 1;       // Finite only, >= 1
    std::string reason;  // Unknown only: open-problem | non-hopfian | unsupported-mix | q-sum

    static CapacityResult finite(Int v) { return {Kind::Finite, std::move(v), {}}; }
    static CapacityResult infinite() { return {Kind::Infinite, 0, {}}; }
    static CapacityResult unknown(std::string reason) { return {Kind::Unknown, 0, std::move(reason)}; }

    bool operator==(const CapacityResult&) const = default;
};

// Expression grammar: atoms S^n, M(<group>, n), K(<group>, n), T^k, P_q, pt;
// operators `v` (wedge, lowest), `x` (product), susp^t(...); parentheses.
ExprPtr parse(const std::string& text);

// Canonical printer; parse(print(e)) normalizes identically to e.
std::string print(const SpaceExpr& e);
inline std::string print(const ExprPtr& e) { return print(*e); }

NormalForm normalize(const SpaceExpr& e);
inline NormalForm normalize(const ExprPtr& e) { return normalize(*e); }

CapacityResult capacity(const SpaceExpr& e);
inline CapacityResult capacity(const ExprPtr& e) { return capacity(*e); }

// The homotopy types dominated by e, as canonical expressions; defined
// when capacity(e) is finite, and the list length equals that capacity.
std::vector<ExprPtr> dominated_types(const SpaceExpr& e);
inline std::vector<ExprPtr> dominated_types(const ExprPtr& e) { return dominated_types(*e); }

// Reduced homology in degree i >= 1 (Moore-side normal forms only).
fga::AbelianGroup homology(const SpaceExpr& e, std::uint64_t i);
inline fga::AbelianGroup homology(const ExprPtr& e, std::uint64_t i) { return homology(*e, i); }

// Homotopy group in degree i >= 1 (EM-side normal forms only).
fga::AbelianGroup homotopy_group(const SpaceExpr& e, std::uint64_t i);
inline fga::AbelianGroup homotopy_group(const ExprPtr& e, std::uint64_t i) { return homotopy_group(*e, i); }

// Rewrites a Moore atom M(A, n) as susp^{n-1} of a wedge of
// pseudo-projective planes, one P_{p^a} per primary cyclic component and
// one P_0 per unit of free rank.
ExprPtr moore_pseudoprojective_form(const SpaceExpr& m);
inline ExprPtr moore_pseudoprojective_form(const ExprPtr& m) { return moore_pseudoprojective_form(*m); }

} // namespace capax::spaces
