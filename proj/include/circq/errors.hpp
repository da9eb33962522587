#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circq {

// Base class for every library error. Catching this is enough to map any
// math/domain failure to the CLI's exit code 3.
struct circq_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text could not be parsed (expression or config). Maps to exit code 2.
struct parse_error : circq_error {
    parse_error(const std::string& msg, std::size_t byte_offset)
        : circq_error(msg + " (at byte " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
    std::size_t offset;
};

// Expression evaluated outside its domain (log of non-positive, division by
// zero, fractional power of a negative base, ...).
struct expr_domain_error : circq_error {
    expr_domain_error(const std::string& msg, const std::string& subexpr)
        : circq_error(msg + " in subexpression '" + subexpr + "'"),
          subexpression(subexpr) {}
    std::string subexpression;
};

// The positivity condition A > C > B > 0 failed at a point.
struct positivity_violation : circq_error {
    positivity_violation(double A_, double C_, double B_)
        : circq_error("positivity condition (ab) violated: need A > C > B > 0, got A=" +
                      std::to_string(A_) + ", C=" + std::to_string(C_) +
                      ", B=" + std::to_string(B_)),
          A(A_), C(C_), B(B_) {}
    double A, C, B;
};

struct zero_vector : circq_error {
    zero_vector() : circq_error("zero vector where a nonzero vector is required") {}
};

struct degenerate_plane : circq_error {
    explicit degenerate_plane(double denom)
        : circq_error("degenerate plane: g(x,x)g(y,y) - g(x,y)^2 = " + std::to_string(denom)) {}
};

// Numeric search did not reach the required residual.
struct solve_failure : circq_error {
    explicit solve_failure(double best)
        : circq_error("orthogonal q-basis search failed, best residual " + std::to_string(best)),
          best_residual(best) {}
    double best_residual;
};

// sample_with_angles could not satisfy the two cosine constraints.
struct infeasible : circq_error {
    infeasible(double cphi, double ctheta, double best)
        : circq_error("no unit vector found with cos(phi)=" + std::to_string(cphi) +
                      ", cos(theta)=" + std::to_string(ctheta) +
                      "; best residual " + std::to_string(best)),
          best_residual(best) {}
    double best_residual;
};

struct frame_not_orthonormal : circq_error {
    frame_not_orthonormal() : circq_error("frame is not flagged orthonormal") {}
};

struct wrong_invariance_class : circq_error {
    explicit wrong_invariance_class(const std::string& what_)
        : circq_error("tensor does not have the required invariance: " + what_) {}
};

struct not_unit_norm : circq_error {
    explicit not_unit_norm(double norm2)
        : circq_error("coordinates are not unit norm: |c|^2 = " + std::to_string(norm2)) {}
};

struct angle_constraint_violated : circq_error {
    angle_constraint_violated(const std::string& which, double value)
        : circq_error("angle gate not satisfied: " + which + " = " + std::to_string(value) +
                      ", required 0 within 1e-10") {}
};

struct empty_nullspace : circq_error {
    empty_nullspace() : circq_error("constraint nullspace contains only the zero tensor") {}
};

struct singular_matrix : circq_error {
    singular_matrix() : circq_error("matrix is numerically singular") {}
};

}  // namespace circq
