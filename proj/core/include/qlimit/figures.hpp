#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qlimit/propagator.hpp"

namespace qlimit::figures {

/// Bar heights of the published q = 10 panels, stored as the picture-environment
/// line lengths (in picture units) for n = -10..10.
using BarLengths = std::array<double, 21>;

/// Discrete Gaussian panels: ticks 0.5 and 0.75 sit 8 and 12 units above the
/// baseline, so one unit of value spans 16 picture units.
inline constexpr double kGaussianUnitsPerValue = 16.0;
/// Evolution panels: tick 0.25 sits 11.2 units above the baseline.
inline constexpr double kEvolutionUnitsPerValue = 44.8;

struct GaussianPanel {
    double kappa;
    BarLengths lengths;
};

struct EvolutionPanel {
    double t;
    BarLengths lengths;
};

/// Upsilon_kappa at kappa = 0.2, 1, 2.
std::span<const GaussianPanel> gaussian_panels();
/// |Psi(n, t)|^2 at t = 0, 1800, 3600, 7200, 14400, 28800.
std::span<const EvolutionPanel> evolution_panels();

/// Bar length converted to a value for either figure.
double gaussian_value(double length);
double evolution_value(double length);

/// The evolution run drawn in the published panels.
SimulationConfig fig2_config();
/// q and kappa values of the published Gaussian panels.
inline constexpr int kGaussianFigureQ = 10;
inline constexpr std::array<double, 3> kGaussianFigureKappas{0.2, 1.0, 2.0};

/// A peak target read off an evolution panel.
struct PeakTarget {
    double t;
    int n;
    double value;
    double tolerance;
};

/// Early-time peak targets (t = 1800 and 3600).
std::span<const PeakTarget> early_peak_targets();

/// Interior local maximum with its topographic prominence.
struct Peak {
    int n;
    double height;
    double prominence;
};

/// Interior strict local maxima of values (indexed n = -q..q) with prominence: the
/// height above the higher of the two lowest points reached before meeting a taller
/// point (or the edge) on each side. Plateaus are not reported.
std::vector<Peak> find_peaks(std::span<const double> values, int q);

/// Lattice point of the largest value (lowest n on ties).
int argmax(std::span<const double> values, int q);

/// Comparison of a run's snapshots to the published evolution panels, for manifests.
struct PanelComparison {
    double t;
    int peak_n;
    double peak_value;
    int figure_peak_n;
    double figure_peak_value;
    double max_abs_deviation;  ///< max_n |p(n) - figure value(n)|
};

/// Compares every snapshot whose time matches a published panel.
std::vector<PanelComparison> compare_to_evolution_panels(const Trajectory& trajectory);

} // namespace qlimit::figures
