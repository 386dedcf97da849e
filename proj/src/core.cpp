#include "stcast/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stcast {

namespace {
constexpr double kInvTwoPi = 0.15915494309189535;
}

// ---------------------------------------------------------------------------
// TimeGrid
// ---------------------------------------------------------------------------

TimeGrid::TimeGrid(int d, PeriodIndex total)
    : periods_per_day(d), periods_per_week(7 * d), total_periods(total) {
  validate();
}

void TimeGrid::validate() const {
  if (periods_per_day <= 0) throw ParameterError("TimeGrid: periods_per_day must be positive");
  if (periods_per_week != 7 * periods_per_day)
    throw ParameterError("TimeGrid: weekly cycle must equal 7 * periods_per_day");
  if (total_periods < 1) throw ParameterError("TimeGrid: total_periods must be at least 1");
}

// ---------------------------------------------------------------------------
// Polygon / SpatialDomain
// ---------------------------------------------------------------------------

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) throw ParameterError("Polygon: needs at least 3 vertices");
}

bool Polygon::contains(Point p) const {
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[j];
    // Boundary: point on segment counts as inside.
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross == 0.0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
        std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y)) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_int = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}

double Polygon::area() const {
  double acc = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    acc += (vertices_[j].x + vertices_[i].x) * (vertices_[j].y - vertices_[i].y);
  }
  return std::abs(acc) * 0.5;
}

BoundingBox Polygon::bounds() const {
  BoundingBox box{vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
  for (const Point& v : vertices_) {
    box.xmin = std::min(box.xmin, v.x);
    box.xmax = std::max(box.xmax, v.x);
    box.ymin = std::min(box.ymin, v.y);
    box.ymax = std::max(box.ymax, v.y);
  }
  return box;
}

SpatialDomain::SpatialDomain(BoundingBox bbox) : bbox_(bbox) {
  if (!(bbox_.area() > 0.0)) throw ParameterError("SpatialDomain: bbox must have positive area");
}

SpatialDomain::SpatialDomain(BoundingBox bbox, Polygon mask)
    : bbox_(bbox), mask_(std::move(mask)) {
  if (!(bbox_.area() > 0.0)) throw ParameterError("SpatialDomain: bbox must have positive area");
  const BoundingBox mb = mask_->bounds();
  if (mb.xmin < bbox_.xmin || mb.xmax > bbox_.xmax || mb.ymin < bbox_.ymin ||
      mb.ymax > bbox_.ymax) {
    throw ParameterError("SpatialDomain: mask must lie within the bbox");
  }
}

// ---------------------------------------------------------------------------
// EventLog
// ---------------------------------------------------------------------------

EventLog::EventLog(std::vector<Event> events, TimeGrid grid, SpatialDomain domain)
    : events_(std::move(events)), grid_(grid), domain_(std::move(domain)) {
  grid_.validate();
  std::stable_sort(events_.begin(), events_.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  for (const Event& e : events_) {
    if (e.t < 0 || e.t >= grid_.total_periods) {
      std::ostringstream msg;
      msg << "EventLog: event period " << e.t << " outside [0, " << grid_.total_periods << ")";
      throw OutOfRangeError(msg.str());
    }
    if (!domain_.contains(e.s)) {
      std::ostringstream msg;
      msg << "EventLog: event at (" << e.s.x << ", " << e.s.y << ") outside the spatial domain";
      throw OutOfRangeError(msg.str());
    }
  }
}

std::vector<Event> EventLog::window(PeriodIndex first, PeriodIndex last) const {
  std::vector<Event> out;
  for (const Event& e : events_) {
    if (e.t >= first && e.t < last) out.push_back(e);
  }
  return out;
}

std::vector<std::int64_t> per_period_counts(const EventLog& log) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(log.grid().total_periods), 0);
  for (const Event& e : log.events()) counts[static_cast<std::size_t>(e.t)]++;
  return counts;
}

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

double bivariate_gaussian(Point s, Point mu, const Eigen::Matrix2d& sigma) {
  const double asym = std::abs(sigma(0, 1) - sigma(1, 0));
  const double scale = sigma.cwiseAbs().maxCoeff();
  if (asym > 1e-9 * std::max(1.0, scale)) {
    throw InvalidCovarianceError("bivariate_gaussian: covariance not symmetric");
  }
  const double det = sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(1, 0);
  if (!(det > 1e-12) || !(sigma(0, 0) > 0.0)) {
    throw InvalidCovarianceError("bivariate_gaussian: covariance not positive definite");
  }
  const double dx = s.x - mu.x;
  const double dy = s.y - mu.y;
  // Inverse of a 2x2 symmetric matrix, written out.
  const double q = (sigma(1, 1) * dx * dx - 2.0 * sigma(0, 1) * dx * dy + sigma(0, 0) * dy * dy) / det;
  return kInvTwoPi / std::sqrt(det) * std::exp(-0.5 * q);
}

void DensityModel::evaluate_many(std::span<const Point> sites, PeriodIndex t,
                                 std::span<double> out) const {
  for (std::size_t i = 0; i < sites.size(); ++i) out[i] = evaluate(sites[i], t);
}

void DensityModel::require_supported(PeriodIndex t) const {
  if (!supported_periods().contains(t)) {
    std::ostringstream msg;
    msg << name() << ": period " << t << " outside the supported range ["
        << supported_periods().first << ", " << supported_periods().last << "]";
    throw OutOfRangeError(msg.str());
  }
}

UniformDensity::UniformDensity(SpatialDomain domain)
    : domain_(std::move(domain)), value_(1.0 / domain_.area()) {}

double UniformDensity::evaluate(Point s, PeriodIndex /*t*/) const {
  return domain_.contains(s) ? value_ : 0.0;
}

// ---------------------------------------------------------------------------
// Density grids
// ---------------------------------------------------------------------------

Point DensityGrid::center(int ix, int iy) const {
  const BoundingBox& box = domain.bbox();
  const double cw = box.width() / nx;
  const double ch = box.height() / ny;
  return {box.xmin + (ix + 0.5) * cw, box.ymin + (iy + 0.5) * ch};
}

double DensityGrid::total_mass() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * cell_area;
}

std::vector<Point> grid_centers(const SpatialDomain& domain, int nx, int ny) {
  const BoundingBox& box = domain.bbox();
  const double cw = box.width() / nx;
  const double ch = box.height() / ny;
  std::vector<Point> centers;
  centers.reserve(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      centers.push_back({box.xmin + (ix + 0.5) * cw, box.ymin + (iy + 0.5) * ch});
    }
  }
  return centers;
}

DensityGrid rasterize(const DensityModel& model, PeriodIndex t, int nx, int ny) {
  if (nx < 2 || ny < 2) throw ParameterError("rasterize: nx and ny must be at least 2");
  model.require_supported(t);

  DensityGrid grid;
  grid.domain = model.domain();
  grid.nx = nx;
  grid.ny = ny;
  grid.cell_area = grid.domain.bbox().area() / (static_cast<double>(nx) * ny);
  grid.values.resize(static_cast<std::size_t>(nx) * ny);

  const std::vector<Point> centers = grid_centers(grid.domain, nx, ny);
  model.evaluate_many(centers, t, grid.values);

  double mass = 0.0;
  for (double v : grid.values) {
    if (v < 0.0) throw ParameterError("rasterize: model produced a negative density");
    mass += v;
  }
  mass *= grid.cell_area;
  if (!(mass > 0.0)) throw ParameterError("rasterize: model has no mass on the grid");
  for (double& v : grid.values) v /= mass;
  return grid;
}

double grid_quadrature(const std::function<double(Point)>& f, const SpatialDomain& domain,
                       int nx, int ny) {
  const std::vector<Point> centers = grid_centers(domain, nx, ny);
  const double cell_area = domain.bbox().area() / (static_cast<double>(nx) * ny);
  double sum = 0.0;
  for (const Point& p : centers) {
    if (domain.contains(p)) sum += f(p);
  }
  return sum * cell_area;
}

double gaussian_bbox_mass(Point p, double h, const BoundingBox& box) {
  const double inv = 1.0 / (h * std::sqrt(2.0));
  const double mx = 0.5 * (std::erf((box.xmax - p.x) * inv) - std::erf((box.xmin - p.x) * inv));
  const double my = 0.5 * (std::erf((box.ymax - p.y) * inv) - std::erf((box.ymin - p.y) * inv));
  return mx * my;
}

}  // namespace stcast
