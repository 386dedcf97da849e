#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stcast {

using PeriodIndex = std::int64_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class InvalidCovarianceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class OutOfRangeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class DegenerateSeriesError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class InsufficientDataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class SingularSystemError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class ParameterError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Geometry and time discretization
// ---------------------------------------------------------------------------

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Hourly discretization with daily period d and weekly cycle B = 7d.
struct TimeGrid {
  int periods_per_day = 24;                  // d
  int periods_per_week = 7 * 24;             // B
  PeriodIndex total_periods = 1;             // T

  TimeGrid() = default;
  TimeGrid(int d, PeriodIndex total);

  int week_position(PeriodIndex t) const {
    return static_cast<int>(((t % periods_per_week) + periods_per_week) % periods_per_week);
  }
  void validate() const;
};

struct BoundingBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(Point p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

// Simple polygon, vertices in order (either orientation). Containment is
// even-odd ray casting; boundary points count as inside.
class Polygon {
public:
  Polygon() = default;
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  bool contains(Point p) const;
  double area() const;  // shoelace, absolute
  BoundingBox bounds() const;

private:
  std::vector<Point> vertices_;
};

// Admissible region S: an axis-aligned bounding box in km, optionally
// restricted by a polygon mask.
class SpatialDomain {
public:
  SpatialDomain() = default;
  explicit SpatialDomain(BoundingBox bbox);
  SpatialDomain(BoundingBox bbox, Polygon mask);

  const BoundingBox& bbox() const { return bbox_; }
  const std::optional<Polygon>& mask() const { return mask_; }
  bool contains(Point p) const {
    return bbox_.contains(p) && (!mask_ || mask_->contains(p));
  }
  // Area of S (mask polygon area when masked, bbox area otherwise).
  double area() const { return mask_ ? mask_->area() : bbox_.area(); }

private:
  BoundingBox bbox_{0.0, 0.0, 1.0, 1.0};
  std::optional<Polygon> mask_;
};

// ---------------------------------------------------------------------------
// Events
// ---------------------------------------------------------------------------

struct Event {
  PeriodIndex t = 0;
  Point s;
};

class EventLog {
public:
  EventLog(std::vector<Event> events, TimeGrid grid, SpatialDomain domain);

  const std::vector<Event>& events() const { return events_; }
  const TimeGrid& grid() const { return grid_; }
  const SpatialDomain& domain() const { return domain_; }
  std::size_t size() const { return events_.size(); }

  // Events restricted to periods [first, last); order preserved.
  std::vector<Event> window(PeriodIndex first, PeriodIndex last) const;

private:
  std::vector<Event> events_;
  TimeGrid grid_;
  SpatialDomain domain_;
};

// Per-period event counts n_t; length T, sums to the log size exactly.
std::vector<std::int64_t> per_period_counts(const EventLog& log);

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

// (2*pi)^-1 |Sigma|^-1/2 exp(-0.5 (s-mu)' Sigma^-1 (s-mu)).
// Throws InvalidCovarianceError unless sigma is symmetric with det > 1e-12.
double bivariate_gaussian(Point s, Point mu, const Eigen::Matrix2d& sigma);

struct PeriodRange {
  PeriodIndex first = 0;
  PeriodIndex last = std::numeric_limits<PeriodIndex>::max();  // inclusive
  bool contains(PeriodIndex t) const { return t >= first && t <= last; }
};

// A normalized predictive spatial density f_t(s): non-negative, integrates to
// one over the domain for every supported period. Evaluation must be safe for
// concurrent read-only use once the object is constructed.
class DensityModel {
public:
  virtual ~DensityModel() = default;

  virtual double evaluate(Point s, PeriodIndex t) const = 0;
  virtual void evaluate_many(std::span<const Point> sites, PeriodIndex t,
                             std::span<double> out) const;
  virtual PeriodRange supported_periods() const = 0;
  virtual const SpatialDomain& domain() const = 0;
  virtual std::string name() const = 0;

  void require_supported(PeriodIndex t) const;
};

class UniformDensity final : public DensityModel {
public:
  explicit UniformDensity(SpatialDomain domain);

  double evaluate(Point s, PeriodIndex t) const override;
  PeriodRange supported_periods() const override { return {}; }
  const SpatialDomain& domain() const override { return domain_; }
  std::string name() const override { return "uniform"; }

private:
  SpatialDomain domain_;
  double value_;
};

// ---------------------------------------------------------------------------
// Density grids (export surface)
// ---------------------------------------------------------------------------

struct DensityGrid {
  SpatialDomain domain;
  int nx = 0;
  int ny = 0;
  double cell_area = 0.0;
  std::vector<double> values;  // row-major, index = iy * nx + ix

  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  Point center(int ix, int iy) const;
  double total_mass() const;  // sum of values * cell_area
};

// Cell centers of an nx-by-ny tiling of the domain bbox, row-major.
std::vector<Point> grid_centers(const SpatialDomain& domain, int nx, int ny);

// Cell-center evaluation of the model at period t, renormalized so that
// sum(values) * cell_area == 1. Throws OutOfRangeError for unsupported t.
DensityGrid rasterize(const DensityModel& model, PeriodIndex t, int nx, int ny);

// Cell-center quadrature of an arbitrary function over the domain; sites
// outside the mask contribute zero.
double grid_quadrature(const std::function<double(Point)>& f, const SpatialDomain& domain,
                       int nx, int ny);

// Exact mass of an isotropic Gaussian kernel (bandwidth h) centered at p over
// the domain bbox: the product of the two per-axis normal CDF differences.
double gaussian_bbox_mass(Point p, double h, const BoundingBox& box);

}  // namespace stcast
