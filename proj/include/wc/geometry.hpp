#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "wc/polynomial.hpp"
#include "wc/weyl.hpp"

namespace wc {

inline constexpr double kGeometryTolerance = 1e-9;
inline constexpr double kLpMargin = 1e-6;
inline constexpr int kRegularPointRetries = 64;

// Rotation angle theta = 2*pi*num/den, reduced, with 0 <= theta <= pi.
class Angle {
public:
  Angle() = default;
  static Angle from_fraction(int num, int den); // of 2*pi
  // "0", "pi", "pi/2", "2pi/5", "4*pi/5".
  static Angle parse(std::string_view text);

  int num() const { return num_; }
  int den() const { return den_; }
  // The eigenvalues at this angle are primitive den-th roots of unity.
  int root_order() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double radians() const;
  std::string to_string() const;

  friend bool operator==(const Angle&, const Angle&) = default;
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    return std::int64_t{a.num_} * b.den_ <=> std::int64_t{b.num_} * a.den_;
  }

private:
  int num_ = 0, den_ = 1;
};

using RationalVector = std::vector<mpq_class>;

// A linear subspace of a stage, by columns in simple-root coordinates.
struct Subspace {
  Eigen::MatrixXd basis;
  std::optional<std::vector<RationalVector>> exact; // rational basis when available

  int dim() const { return static_cast<int>(basis.cols()); }
};

struct AngleComponent {
  Angle angle;
  int dim = 0;
  Subspace space;
};

// The root subsystem spanned by simple labels J, with x restricted to it.
// Requires x(Phi_J) = Phi_J.
struct Stage {
  std::vector<int> labels;
  IntMatrix matrix;            // x on span(alpha_j : j in J), columns = images
  IntMatrix gram;              // scaled pairing of the simple roots in J
  std::vector<RootIndex> roots; // Phi_J, ascending
  std::vector<std::vector<int>> coords; // coefficients over J, parallel to roots
  int order = 1;               // order of x on the stage
};

Stage full_stage(const TwistedElement& x);
Stage restrict_stage(const TwistedElement& x, const std::vector<int>& labels);

// Pairing of a stage vector with a root of the stage.
double pairing(const Stage& s, const Eigen::VectorXd& v, std::size_t root_pos);
mpq_class pairing(const Stage& s, const RationalVector& v, std::size_t root_pos);

// Components V_x^theta of the stage, ascending in theta, zero angle included
// when present. Dimensions come from the cyclotomic factorization of the
// characteristic polynomial; the floating-point kernels must agree.
std::vector<AngleComponent> eigen_angles(const Stage& s);
std::vector<AngleComponent> eigen_angles(const TwistedElement& x);
std::vector<Angle> nonzero_angles(const TwistedElement& x);

// {gamma in the stage : V^theta in H_gamma}, exactly: for a rational root
// this is equivalent to orthogonality to the kernel of Phi_d(M).
std::vector<RootIndex> psi(const Stage& s, const Angle& theta);

// Roots of the stage whose hyperplanes contain K; exact when K is rational.
std::vector<RootIndex> roots_containing(const Stage& s, const Subspace& k);

struct RegularPoint {
  Eigen::VectorXd point; // stage coordinates
  std::optional<RationalVector> exact;
  std::vector<RootIndex> psi; // roots whose hyperplanes contain K
};

// A point of K on no root hyperplane of the stage except those containing K.
// Psi is exact when K carries a rational basis, else decided within tolerance.
RegularPoint regular_point(const Stage& s, const Subspace& k, std::mt19937_64& rng);

// A point of K in the closed dominant chamber of the stage lying on no
// hyperplane H_gamma for gamma in `avoid`. Decided by linear feasibility of
// the cone K cap C0 against each gamma.
std::optional<RegularPoint> dominant_regular_point(const Stage& s, const Subspace& k,
                                                   const std::vector<RootIndex>& avoid, std::mt19937_64& rng);

bool is_admissible(const TwistedElement& x, const std::vector<Angle>& sequence);
// All orderings of the full set of nonzero angles that are admissible.
std::vector<std::vector<Angle>> admissible_sequences(const TwistedElement& x);

struct GoodPositionCertificate {
  std::vector<Angle> sequence;
  // regular_points[i] lies in V^{theta_1} + ... + V^{theta_{i+1}}, simple-root coordinates.
  std::vector<Eigen::VectorXd> regular_points;
  // Point found at each stage of the recursion, in that stage's coordinates.
  std::vector<Eigen::VectorXd> stage_points;
  std::vector<std::vector<int>> stage_labels;          // J_0 .. J_r
  std::vector<std::vector<RootIndex>> parabolic_chain; // Phi_0 .. Phi_r
  std::vector<int> h_values;                           // #positive roots of each Phi_i
  bool exact = false;                                  // every LP solved over Q
};

// The recursion: stage i needs a regular point of V^{theta_i} (restricted to
// Phi_{i-1}) in the closed dominant chamber of Phi_{i-1}^+. Throws InputError
// on an inadmissible sequence.
std::optional<GoodPositionCertificate> is_good_position(const TwistedElement& x, const std::vector<Angle>& sequence,
                                                        std::uint64_t seed = 1);
// The definition read directly: for each i, C0-bar contains a Phi-regular point
// of V^{theta_1} + ... + V^{theta_i}. Cross-check of the recursion.
bool is_good_position_direct(const TwistedElement& x, const std::vector<Angle>& sequence, std::uint64_t seed = 1);

// sum (theta_i / pi) (h_{i-1} - h_i); throws InconsistencyError if not an integer.
int good_position_length(const GoodPositionCertificate& cert);

// Least i >= 1 with (x^{-i} e, gamma) < 0, e in full simple-root coordinates.
// Throws InconsistencyError if there is none within order(x) steps.
int separation_witness(const TwistedElement& x, const Eigen::VectorXd& e, RootIndex gamma);

} // namespace wc
