#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weylsym/models.hpp"
#include "weylsym/verify/report.hpp"

namespace weylsym::verify {

/// A model violates a structural precondition (non-polynomial field,
/// non-triangular chart, mismatched ids).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using models::BirationalMap;
using models::FirstIntegral;
using models::ParticularSolution;
using models::Variant;
using models::VectorFieldSystem;

/// Max total degree of the right-hand sides in the state symbols.
/// Throws StructuralError when a right-hand side has a state-dependent denominator.
unsigned state_degree(const VectorFieldSystem& system);

/// Passes iff the state degree equals `expected` (3 for five_dim when unset).
VerificationReport check_vector_field_degree(const VectorFieldSystem& system,
                                             std::optional<unsigned> expected = std::nullopt);
VerificationReport check_vector_field_degree(std::string_view system_id);

/// R_i = eps*D(phi_i) - F_i(phi, eps*u) with transformed parameters and eta.
VerificationReport check_symmetry(const VectorFieldSystem& system, const BirationalMap& map);
VerificationReport check_symmetry(std::string_view system_id, std::string_view map_id,
                                  Variant variant = Variant::Printed);

VerificationReport check_first_integral(const VectorFieldSystem& system, const FirstIntegral& integral);
VerificationReport check_first_integral(std::string_view system_id, std::string_view integral_id);

/// Inverse of a triangular chart: every corrected variable is shifted by an
/// expression in unchanged variables, so the inverse subtracts the shift.
std::vector<models::MapComponent> triangular_inverse(const VectorFieldSystem& system, const BirationalMap& chart);

VerificationReport check_chart(const VectorFieldSystem& system, const BirationalMap& chart);
VerificationReport check_chart(std::string_view system_id, std::string_view chart_id,
                               Variant variant = Variant::Printed);

VerificationReport check_hamiltonian_consistency(const VectorFieldSystem& system);
VerificationReport check_hamiltonian_consistency(std::string_view system_id);

/// `y_substitution` replaces the default y = w*q + s (s standing for exp(-t)).
VerificationReport check_reduction_5d_to_4d(std::optional<RatExpr> y_substitution = std::nullopt);

/// Eliminates w from the (x, z, w) system and compares with the second-order x equation.
VerificationReport check_second_order_single(const VectorFieldSystem& xzw, const VectorFieldSystem& target);
/// Eliminates q1, q2 from the four-dimensional system and compares with the coupled pair.
VerificationReport check_second_order_coupled(const VectorFieldSystem& ham, const VectorFieldSystem& target);
VerificationReport check_second_order_forms();

VerificationReport check_particular_solution(const ParticularSolution& solution);
VerificationReport check_particular_solution(std::string_view solution_id);

VerificationReport check_invariant_divisor();

/// Runs the printed and corrected variants of a disputed map through `check`
/// and passes iff exactly one verifies; the note names it.
VerificationReport check_disputed(std::string_view check_id, std::string_view system_id, std::string_view map_id,
                                  bool chart);

/// Builds dq/du = dH/dp, dp/du = -dH/dq for every pair of `h`.
VectorFieldSystem from_hamiltonian(std::string id, const models::Hamiltonian& h, SymbolId indep,
                                   std::vector<SymbolId> params, std::optional<LinearRelation> relation);

/// Solves `lhs == value` for `var` when lhs is affine in it.
RatExpr solve_affine(const RatExpr& lhs, SymbolId var, const RatExpr& value);

/// True iff `a / b` does not depend on any of `vars`.
bool proportional(const RatExpr& a, const RatExpr& b, std::span<const SymbolId> vars);

}  // namespace weylsym::verify
