#include "gridsde/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridsde {

Partition::Partition(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("Partition: need at least one cell");
    if (points_.front() != 0.0) throw std::invalid_argument("Partition: first grid point must be 0");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1]))
            throw std::invalid_argument("Partition: grid points must be strictly increasing");
}

Partition Partition::uniform(double horizon, int cells) {
    if (cells < 1 || horizon <= 0.0) throw std::invalid_argument("Partition::uniform: bad arguments");
    std::vector<double> pts(cells + 1);
    for (int i = 0; i <= cells; ++i) pts[i] = horizon * i / cells;
    pts.back() = horizon;
    return Partition(std::move(pts));
}

double Partition::mesh() const {
    double m = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) m = std::max(m, points_[i] - points_[i - 1]);
    return m;
}

int Partition::cell_index(double t) const {
    if (!(t > 0.0 && t <= points_.back()))
        throw std::out_of_range("Partition::cell_index: t outside (0, T]");
    // first point >= t; t in (points[i], points[i+1]] maps to cell i
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    return static_cast<int>(it - points_.begin()) - 1;
}

TimeLattice::TimeLattice(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) throw std::invalid_argument("TimeLattice: need at least one cell");
    if (times_.front() != 0.0) throw std::invalid_argument("TimeLattice: must start at 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("TimeLattice: degenerate (non-increasing) cell");
}

TimeLattice TimeLattice::uniform(double horizon, int cells) {
    if (cells < 1 || horizon <= 0.0) throw std::invalid_argument("TimeLattice::uniform: bad arguments");
    std::vector<double> ts(cells + 1);
    for (int i = 0; i <= cells; ++i) ts[i] = horizon * i / cells;
    ts.back() = horizon;
    return TimeLattice(std::move(ts));
}

TimeLattice TimeLattice::refine(const Partition& partition, double max_step) {
    if (max_step <= 0.0) throw std::invalid_argument("TimeLattice::refine: max_step must be > 0");
    const auto& pts = partition.points();
    std::vector<double> ts;
    ts.push_back(0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double len = pts[i] - pts[i - 1];
        const int sub = std::max(1, static_cast<int>(std::ceil(len / max_step - 1e-12)));
        for (int j = 1; j < sub; ++j) ts.push_back(pts[i - 1] + len * j / sub);
        ts.push_back(pts[i]);
    }
    return TimeLattice(std::move(ts));
}

TimeLattice TimeLattice::with_times(const std::vector<double>& extra) const {
    std::vector<double> merged = times_;
    for (double t : extra) {
        if (!(t > 0.0 && t <= times_.back()))
            throw std::invalid_argument("TimeLattice::with_times: time outside (0, T]");
        merged.push_back(t);
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return TimeLattice(std::move(merged));
}

bool TimeLattice::refines(const Partition& partition) const {
    for (double t : partition.points())
        if (!std::binary_search(times_.begin(), times_.end(), t)) return false;
    return true;
}

int TimeLattice::index_at_or_before(double t) const {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) throw std::out_of_range("TimeLattice: t before lattice start");
    return static_cast<int>(it - times_.begin()) - 1;
}

}  // namespace gridsde
