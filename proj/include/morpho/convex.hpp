#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morpho/geometry.hpp"

namespace morpho {

class HPolytope {
 public:
  HPolytope() = default;
  explicit HPolytope(std::vector<HalfSpaced> halfspaces, bool reduced = false);

  Eigen::Index dimension() const { return halfspaces_.front().dimension(); }
  const std::vector<HalfSpaced>& halfspaces() const { return halfspaces_; }
  std::size_t size() const { return halfspaces_.size(); }
  bool reduced() const { return reduced_; }

  bool contains(const Vecd& x, double tol = 0) const;
  /// Rows are the unit normals.
  Matd normals() const;
  Vecd offsets() const;

 private:
  std::vector<HalfSpaced> halfspaces_;
  bool reduced_ = false;
};

enum class ResilienceKind { Decreasing, Increasing, Isometric, None };
const char* to_string(ResilienceKind kind);

struct ResilienceCertificate {
  ResilienceKind kind = ResilienceKind::None;
  std::optional<Balld> inscribed;
  std::optional<Balld> exscribed;
  std::optional<Vecd> direction;
  /// Angle between every facet normal and direction.
  std::optional<double> angle;
  std::string diagnostic;
};

/// Outcome of fitting a ball tangent to every facet hyperplane.
struct BallFit {
  std::optional<Balld> ball;
  double residual = 0;
  double condition = 0;
  std::string diagnostic;
};

struct SimilarityCheck {
  bool passed = false;
  double max_angle = 0;
  double max_offset_residual = 0;
  std::size_t eroded_facets = 0;
  std::size_t image_facets = 0;
  std::string reason;
};

double default_tolerance(const HPolytope& p);

HalfSpaced erode_halfspace(const HalfSpaced& h, double r);
HPolytope erode_polytope(const HPolytope& p, double r);
HPolytope reduce(const HPolytope& p);
bool is_bounded(const HPolytope& p);
HPolytope intersect(const HPolytope& a, const HPolytope& b);
/// Image of p under s; stays reduced when p is.
HPolytope apply(const Similarityd& s, const HPolytope& p);

BallFit fit_inscribed_ball(const HPolytope& p, std::optional<double> tol = std::nullopt);
BallFit fit_exscribed_ball(const HPolytope& p, std::optional<double> tol = std::nullopt);
std::optional<Balld> inscribed_ball(const HPolytope& p, std::optional<double> tol = std::nullopt);
std::optional<Balld> exscribed_ball(const HPolytope& p, std::optional<double> tol = std::nullopt);
/// Largest contained ball; radius is +inf when it can grow without bound.
Balld chebyshev_ball(const HPolytope& p);
std::optional<Vecd> translation_witness(const HPolytope& p, double r, std::optional<double> tol = std::nullopt);

ResilienceCertificate classify(const HPolytope& p, std::optional<double> tol = std::nullopt);
Similarityd predicted_sigma(const ResilienceCertificate& cert, double r);
/// Homothety about the Chebyshev center by (R - r)/R; the natural guess for sets that are not resilient.
Similarityd chebyshev_candidate(const HPolytope& p, double r);

SimilarityCheck verify_similarity_report(const HPolytope& p, double r, const Similarityd& s,
                                         std::optional<double> tol = std::nullopt);
bool verify_similarity(const HPolytope& p, double r, const Similarityd& s, std::optional<double> tol = std::nullopt);

/// Facet-set comparison of two reduced polytopes.
SimilarityCheck match_facets(const HPolytope& a, const HPolytope& b, double tol);

double radius_sequence(double r, double alpha, long i);
bool expansion_resilient(const HPolytope& p, double r, std::optional<double> tol = std::nullopt);

}  // namespace morpho
