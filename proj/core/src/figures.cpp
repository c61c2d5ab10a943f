#include "qlimit/figures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlimit/lattice.hpp"

namespace qlimit::figures {

namespace {

constexpr std::array<GaussianPanel, 3> kGaussianPanels{{
    {0.2, {.45684, .60584, .91252, 1.38704, 2.02870, 2.81235, 3.67880, 4.53499, 5.26650, 5.76099,
           5.93595, 5.76099, 5.26650, 4.53499, 3.67880, 2.81235, 2.02870, 1.38704, .91252, .60584,
           .45684}},
    {1.0, {.00000, .00000, .00062, .00582, .04073, .21114, .81152, 2.31254, 4.88587, 7.65336,
           8.88838, 7.65336, 4.88587, 2.31254, .81152, .21114, .04073, .00582, .00062, .00000,
           .00000}},
    {2.0, {.00000, .00000, .00000, .00000, .00022, .00596, .08811, .71551, 3.19387, 7.83682,
           10.57013, 7.83682, 3.19387, .71551, .08811, .00596, .00022, .00000, .00000, .00000,
           .00000}},
}};

constexpr std::array<EvolutionPanel, 6> kEvolutionPanels{{
    {0.0, {.03669, .06452, .14637, .33818, .72346, 1.39031, 2.37895, 3.61516, 4.87548, 5.83403,
           6.19376, 5.83403, 4.87548, 3.61516, 2.37895, 1.39031, .72346, .33818, .14637, .06452,
           .03669}},
    {1800.0, {.22564, .31724, .58692, 1.27954, 2.14642, 3.35655, 4.60615, 5.64395, 6.13188,
              5.92664, 5.08824, 3.88869, 2.63945, 1.58545, .84578, .41966, .20503, .08581, .01937,
              .00134, .00000}},
    {3600.0, {.26967, 2.96190, 5.66199, 5.85063, 6.02537, 6.21882, 5.69331, 4.65768, 3.35196,
              2.12429, 1.17502, .56843, .24021, .09026, .03062, .00964, .00306, .00177, .00281,
              .01045, .05211}},
    {7200.0, {.15477, .07101, .09125, .05141, .14277, .22563, .47562, 1.01863, 1.92814, 3.13281,
              4.46502, 5.60246, 6.05390, 5.98761, 5.41350, 3.93488, 2.85403, 1.67411, 1.04326,
              .44318, .23601}},
    {14400.0, {.00136, .01125, .02640, .08843, .11048, .11762, .10123, .09269, .04075, .05542,
               .23441, .19161, .82175, 1.91892, 4.71830, 8.36617, 13.01297, 7.71413, 3.34343,
               1.49206, 2.54061}},
    {28800.0, {1.45071, .25480, 1.44982, 6.82281, 4.50720, 7.35129, .06901, 2.77297, .08961,
               .08911, 2.17956, 3.93645, 2.53066, 1.39991, 5.12186, 3.55734, .49856, .62317,
               .24171, .03045, .02298}},
}};

// Peak bars of the t = 1800 and t = 3600 panels; the tolerance covers reading the
// figure plus the coarse integrator step.
constexpr std::array<PeakTarget, 2> kEarlyPeaks{{
    {1800.0, -2, 6.13188 / kEvolutionUnitsPerValue, 0.02},
    {3600.0, -5, 6.21882 / kEvolutionUnitsPerValue, 0.02},
}};

} // namespace

std::span<const GaussianPanel> gaussian_panels() { return kGaussianPanels; }
std::span<const EvolutionPanel> evolution_panels() { return kEvolutionPanels; }
std::span<const PeakTarget> early_peak_targets() { return kEarlyPeaks; }

double gaussian_value(double length) { return length / kGaussianUnitsPerValue; }
double evolution_value(double length) { return length / kEvolutionUnitsPerValue; }

SimulationConfig fig2_config() {
    SimulationConfig c;
    c.q = 10;
    c.kappa = 0.2;
    c.mu = 1.0;
    c.beta = 0.1;
    c.omega = 1.0 / 5000.0;
    c.t_end = 28800.0;
    c.dt = 1.0;
    c.snapshots = {0.0, 1800.0, 3600.0, 7200.0, 14400.0, 28800.0};
    c.method = Method::strang;
    return c;
}

std::vector<Peak> find_peaks(std::span<const double> values, int q) {
    if (values.size() != static_cast<std::size_t>(2 * q + 1)) {
        throw std::invalid_argument("find_peaks: value count does not match lattice");
    }
    std::vector<Peak> peaks;
    const std::size_t size = values.size();
    for (std::size_t i = 1; i + 1 < size; ++i) {
        const double h = values[i];
        if (!(h > values[i - 1] && h > values[i + 1])) continue;

        double left_min = h;
        for (std::size_t j = i; j-- > 0;) {
            if (values[j] > h) break;
            left_min = std::min(left_min, values[j]);
        }
        double right_min = h;
        for (std::size_t j = i + 1; j < size; ++j) {
            if (values[j] > h) break;
            right_min = std::min(right_min, values[j]);
        }
        peaks.push_back({static_cast<int>(i) - q, h, h - std::max(left_min, right_min)});
    }
    return peaks;
}

int argmax(std::span<const double> values, int q) {
    const auto it = std::max_element(values.begin(), values.end());
    return static_cast<int>(it - values.begin()) - q;
}

std::vector<PanelComparison> compare_to_evolution_panels(const Trajectory& trajectory) {
    std::vector<PanelComparison> out;
    for (const auto& snap : trajectory.states) {
        if (snap.psi.lattice().q() != 10) continue;
        for (const auto& panel : kEvolutionPanels) {
            if (std::abs(panel.t - snap.t) > 1e-9) continue;
            const auto probs = probabilities(snap.psi);
            std::array<double, 21> fig{};
            for (std::size_t i = 0; i < fig.size(); ++i) fig[i] = evolution_value(panel.lengths[i]);
            double dev = 0.0;
            for (std::size_t i = 0; i < fig.size(); ++i) dev = std::max(dev, std::abs(probs.values()[i] - fig[i]));
            const int n = argmax(probs.values(), 10);
            const int fn = argmax(fig, 10);
            out.push_back({snap.t, n, probs.at(n), fn, fig[static_cast<std::size_t>(fn + 10)], dev});
        }
    }
    return out;
}

} // namespace qlimit::figures
