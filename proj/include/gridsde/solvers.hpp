#pragma once

#include "gridsde/integrability.hpp"
#include "gridsde/measures.hpp"
#include "gridsde/model.hpp"
#include "gridsde/noise.hpp"

namespace gridsde {

// Discretized cadlag trajectory on a lattice. state(k) is X(s_k) with the
// post-jump convention at event times; left_limit(k) is the value before the
// events at s_k were applied (equal to state(k) at non-event nodes).
class PathLattice {
  public:
    PathLattice(TimeLattice lattice, int m);

    const TimeLattice& lattice() const { return lattice_; }
    int m() const { return m_; }
    int nodes() const { return lattice_.cells() + 1; }

    const Vec& state(int k) const { return post_[k]; }
    const Vec& left_limit(int k) const { return pre_[k]; }
    const Vec& terminal() const { return post_.back(); }

    void set(int k, const Vec& pre, const Vec& post) {
        pre_[k] = pre;
        post_[k] = post;
    }

    double sup_norm() const;
    // sup_k |state(k) - other.state(k)|
    double sup_distance(const PathLattice& other) const;

  private:
    TimeLattice lattice_;
    int m_;
    std::vector<Vec> pre_, post_;
};

inline constexpr double kBlowUpGuard = 1e12;

// Explicit Euler scheme for the grid-sampling dynamics: left-endpoint
// coefficient evaluation, compensator drift by the kernel quadrature, exact
// jump application at event times (all simultaneous events see the same left
// limit). Throws BlowUpError past the |X| <= 1e12 guard.
PathLattice euler_grid_sampling(const ComposedCoefficients& cc, const NoiseRealization& noise);

// Recomputes the random-measure form of the same dynamics on the same noise
// and returns t -> |X(t) - RHS(t)|. Under the shared discretization the two
// forms coincide up to floating-point error.
ValuePath evaluate_rm_form(const ComposedCoefficients& cc, const PathLattice& path,
                           const NoiseRealization& noise);

// Euler scheme for the limit dynamics: u-averaged drift, exact conditional
// Gaussian martingale increment via the covariance factor, u-averaged jump
// compensator, jumps applied with the event's own uniform mark.
PathLattice euler_limit(const ComposedCoefficients& cc, const NoiseRealization& noise,
                        const UnitCubeRule& u_rule);

}  // namespace gridsde
