#include "ptraj/phase_correlation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "ptraj/errors.hpp"

namespace ptraj {

namespace {

// FFTW planning touches global state; execution of a finished plan does not.
std::mutex g_planner_mutex;

// In-place complex 2D DFT at exact dimensions (FFTW handles any size via
// mixed radix, so no zero-padding is ever introduced).
void run_dft(int width, int height, std::complex<double>* data, int sign) {
    fftw_complex* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        plan = fftw_plan_dft_2d(height, width, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    if (!plan) {
        throw Error(ErrorCategory::Numeric, "numeric-instability", "FFTW planning failed");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        fftw_destroy_plan(plan);
    }
}

}  // namespace

Spectrum forward_transform(const Frame& frame) {
    if (frame.width < 8 || frame.height < 8) {
        throw Error(ErrorCategory::Data, "frame-too-small",
                    "need at least 8x8 pixels for the transform");
    }
    Spectrum spectrum;
    spectrum.width = frame.width;
    spectrum.height = frame.height;
    spectrum.values.assign(frame.pixels.begin(), frame.pixels.end());
    run_dft(frame.width, frame.height, spectrum.values.data(), FFTW_FORWARD);
    return spectrum;
}

Spectrum cross_power_spectrum(const Spectrum& ga, const Spectrum& gb, double eps) {
    if (ga.width != gb.width || ga.height != gb.height) {
        throw Error(ErrorCategory::Data, "spectrum-mismatch",
                    std::to_string(ga.width) + "x" + std::to_string(ga.height) + " vs " +
                        std::to_string(gb.width) + "x" + std::to_string(gb.height));
    }
    if (!(eps > 0.0)) {
        throw Error(ErrorCategory::Usage, "invalid-eps", "eps must be positive");
    }
    Spectrum r;
    r.width = ga.width;
    r.height = ga.height;
    r.values.resize(ga.values.size());
    for (std::size_t i = 0; i < ga.values.size(); ++i) {
        const std::complex<double> x = ga.values[i] * std::conj(gb.values[i]);
        r.values[i] = x / std::max(std::abs(x), eps);
    }
    return r;
}

Surface correlation_surface(const Spectrum& r) {
    std::vector<std::complex<double>> work = r.values;
    run_dft(r.width, r.height, work.data(), FFTW_BACKWARD);

    Surface surface;
    surface.width = r.width;
    surface.height = r.height;
    surface.values.resize(work.size());
    const double scale = 1.0 / (static_cast<double>(r.width) * r.height);
    double max_imag = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        surface.values[i] = work[i].real() * scale;
        max_imag = std::max(max_imag, std::abs(work[i].imag()) * scale);
    }
    if (max_imag >= 1e-6) {
        throw Error(ErrorCategory::Numeric, "numeric-instability",
                    "imaginary residue " + std::to_string(max_imag) +
                        " exceeds tolerance; spectrum is not conjugate-symmetric");
    }
    return surface;
}

ShiftEstimate peak_shift(const Surface& surface, int pair_index) {
    if (surface.values.empty()) {
        throw Error(ErrorCategory::Data, "invalid-argument", "empty correlation surface");
    }
    double max = surface.values.front();
    double min = max;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < surface.values.size(); ++i) {
        const double v = surface.values[i];
        if (v > max) {
            max = v;
            argmax = i;
        }
        if (v < min) min = v;
    }
    if (max - min <= 1e-12 * std::max(1.0, std::abs(max))) {
        throw DegenerateSurfaceError(max, "correlation surface is flat (blank frames?)");
    }
    const int px = static_cast<int>(argmax % surface.width);
    const int py = static_cast<int>(argmax / surface.width);
    ShiftEstimate estimate;
    estimate.dx = 2 * px < surface.width ? px : px - surface.width;
    estimate.dy = 2 * py < surface.height ? py : py - surface.height;
    estimate.peak_response = max;
    estimate.pair_index = pair_index;
    return estimate;
}

ShiftEstimate estimate_shift(const Frame& a, const Frame& b, const CorrelationConfig& config) {
    const Spectrum ga = forward_transform(apply_window(a, config.window));
    const Spectrum gb = forward_transform(apply_window(b, config.window));
    const Spectrum r = cross_power_spectrum(ga, gb, config.eps);
    const Surface surface = correlation_surface(r);
    return peak_shift(surface, a.index);
}

}  // namespace ptraj
