#pragma once

#include <vector>

namespace gridsde {

// Sampling grid 0 = t_0 < t_1 < ... < t_n = T. Cell i (0-based) is the
// half-open interval (t_i, t_{i+1}].
class Partition {
  public:
    explicit Partition(std::vector<double> points);
    static Partition uniform(double horizon, int cells);

    int cells() const { return static_cast<int>(points_.size()) - 1; }
    double horizon() const { return points_.back(); }
    double mesh() const;
    const std::vector<double>& points() const { return points_; }

    // Cell index i with t in (t_i, t_{i+1}]; requires 0 < t <= T.
    int cell_index(double t) const;

  private:
    std::vector<double> points_;
};

// Euler stepping lattice 0 = s_0 < ... < s_K = T. When built from a
// partition it contains every partition point; jump times are adjoined
// with with_times so events always sit on lattice nodes.
class TimeLattice {
  public:
    explicit TimeLattice(std::vector<double> times);
    static TimeLattice uniform(double horizon, int cells);
    // Subdivide every partition cell into equal pieces of length <= max_step.
    static TimeLattice refine(const Partition& partition, double max_step);

    TimeLattice with_times(const std::vector<double>& extra) const;

    int cells() const { return static_cast<int>(times_.size()) - 1; }
    double time(int k) const { return times_[k]; }
    double dt(int k) const { return times_[k + 1] - times_[k]; }
    double horizon() const { return times_.back(); }
    const std::vector<double>& times() const { return times_; }

    bool refines(const Partition& partition) const;

    // Index of the largest lattice time <= t (0 <= t <= T).
    int index_at_or_before(double t) const;

  private:
    std::vector<double> times_;
};

}  // namespace gridsde
