#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ptraj/errors.hpp"
#include "ptraj/phase_correlation.hpp"
#include "ptraj/synthetic.hpp"
#include "support.hpp"

using namespace ptraj;

TEST_CASE("forward transform of a constant frame is pure DC") {
    Frame f;
    f.width = 16;
    f.height = 12;
    f.pixels.assign(16 * 12, 0.37);
    const Spectrum s = forward_transform(f);
    const double dc = 0.37 * 16 * 12;
    CHECK(std::abs(s.at(0, 0) - std::complex<double>(dc, 0.0)) <= 1e-9 * dc);
    for (int v = 0; v < 12; ++v) {
        for (int u = 0; u < 16; ++u) {
            if (u == 0 && v == 0) continue;
            CHECK(std::abs(s.at(u, v)) <= 1e-9 * dc);
        }
    }
}

TEST_CASE("forward transform of an impulse is all ones") {
    Frame f;
    f.width = 8;
    f.height = 8;
    f.pixels.assign(64, 0.0);
    f.pixels[0] = 1.0;
    const Spectrum s = forward_transform(f);
    for (const auto& c : s.values) {
        CHECK(std::abs(c - std::complex<double>(1.0, 0.0)) <= 1e-12);
    }
}

TEST_CASE("forward transform matches the direct double-sum DFT") {
    // Includes a non-power-of-two size to cover the mixed-radix path.
    for (auto [w, h] : {std::pair{16, 16}, std::pair{12, 18}}) {
        const Frame f = testsupport::random_frame(w, h, 11);
        const Spectrum s = forward_transform(f);
        const auto ref = testsupport::dft2_direct(f);
        double max_ref = 0.0;
        for (const auto& c : ref) max_ref = std::max(max_ref, std::abs(c));
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(std::abs(s.values[i] - ref[i]) <= 1e-9 * max_ref);
        }
    }
}

TEST_CASE("transform rejects frames under 8x8") {
    const Frame f = testsupport::random_frame(8, 8, 12);
    CHECK_NOTHROW(forward_transform(f));
    Frame tiny = f;
    tiny.width = 4;
    tiny.height = 4;
    tiny.pixels.resize(16);
    CHECK_THROWS_AS(forward_transform(tiny), Error);
}

TEST_CASE("self cross-power is the unit spectrum") {
    const Frame f = textured_base(32, 32, 13);
    const Spectrum g = forward_transform(f);
    const Spectrum r = cross_power_spectrum(g, g, 1e-12);
    for (const auto& c : r.values) {
        CHECK(std::abs(c - std::complex<double>(1.0, 0.0)) <= 1e-9);
    }
}

TEST_CASE("eps guard maps zero cross-power cells to zero") {
    Spectrum ga, gb;
    ga.width = gb.width = 8;
    ga.height = gb.height = 8;
    ga.values.assign(64, {1.0, 0.0});
    gb.values.assign(64, {1.0, 0.0});
    ga.values[5] = {0.0, 0.0};
    const Spectrum r = cross_power_spectrum(ga, gb, 1e-12);
    CHECK(r.values[5] == std::complex<double>(0.0, 0.0));
    CHECK(std::abs(r.values[6] - std::complex<double>(1.0, 0.0)) <= 1e-15);
}

TEST_CASE("cross-power of a shifted pair carries the shift phase") {
    // Convention freeze: for b = circular_shift(a, (sx,sy)) the cross power
    // must equal exp(-2*pi*i*(u*sx/W + v*sy/H)).
    const int w = 32, h = 32, sx = 5, sy = 3;
    const Frame a = textured_base(w, h, 14);
    const Frame b = circular_shift(a, sx, sy);
    const Spectrum r = cross_power_spectrum(forward_transform(a), forward_transform(b), 1e-12);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            const double angle = -2.0 * std::numbers::pi *
                                 (static_cast<double>(u) * sx / w + static_cast<double>(v) * sy / h);
            const std::complex<double> expected(std::cos(angle), std::sin(angle));
            CHECK(std::abs(r.at(u, v) - expected) <= 1e-6);
        }
    }
}

TEST_CASE("cross power rejects mismatched spectra") {
    const Spectrum ga = forward_transform(testsupport::random_frame(16, 16, 15));
    const Spectrum gb = forward_transform(testsupport::random_frame(16, 8, 16));
    try {
        cross_power_spectrum(ga, gb, 1e-12);
        FAIL("expected spectrum-mismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == "spectrum-mismatch");
    }
}

TEST_CASE("all-ones cross power inverts to a delta at the origin") {
    Spectrum r;
    r.width = 16;
    r.height = 16;
    r.values.assign(256, {1.0, 0.0});
    const Surface s = correlation_surface(r);
    CHECK(s.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < s.values.size(); ++i) {
        CHECK(std::abs(s.values[i]) <= 1e-12);
    }
}

TEST_CASE("pure shift phase inverts to a delta at the shift cell") {
    const int w = 16, h = 16, a = 4, b = 6;
    Spectrum r;
    r.width = w;
    r.height = h;
    r.values.resize(256);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            const double angle = -2.0 * std::numbers::pi *
                                 (static_cast<double>(u) * a / w + static_cast<double>(v) * b / h);
            r.at(u, v) = {std::cos(angle), std::sin(angle)};
        }
    }
    const Surface s = correlation_surface(r);
    CHECK(s.at(a, b) == doctest::Approx(1.0).epsilon(1e-9));
    const ShiftEstimate est = peak_shift(s, 0);
    CHECK(est.dx == a);
    CHECK(est.dy == b);
}

TEST_CASE("surface values sum to the DC coefficient") {
    const Frame a = testsupport::random_frame(16, 16, 17);
    const Frame b = testsupport::random_frame(16, 16, 18);
    const Spectrum r = cross_power_spectrum(forward_transform(a), forward_transform(b), 1e-12);
    const Surface s = correlation_surface(r);
    double sum = 0.0;
    for (double v : s.values) sum += v;
    CHECK(sum == doctest::Approx(r.at(0, 0).real()).epsilon(1e-9));
}

TEST_CASE("non-conjugate-symmetric spectra are rejected") {
    Spectrum r;
    r.width = 8;
    r.height = 8;
    r.values.assign(64, {0.0, 0.0});
    r.at(1, 0) = {0.0, 1.0};
    try {
        correlation_surface(r);
        FAIL("expected numeric-instability");
    } catch (const Error& e) {
        CHECK(e.kind() == "numeric-instability");
    }
}

TEST_CASE("peak ties break to the smallest row-major index") {
    Surface s;
    s.width = 8;
    s.height = 8;
    s.values.assign(64, 0.0);
    s.values[5] = 0.7;
    s.values[20] = 0.7;
    const ShiftEstimate est = peak_shift(s, 3);
    CHECK(est.dx == 5 - 8);  // cell (5,0) wraps negative on an 8-wide surface
    CHECK(est.dy == 0);
    CHECK(est.peak_response == doctest::Approx(0.7));
    CHECK(est.pair_index == 3);
}

TEST_CASE("peak cells at or past half the dimension wrap negative") {
    Surface s;
    s.width = 256;
    s.height = 256;
    s.values.assign(256 * 256, 0.0);
    s.values[2 * 256 + 253] = 1.0;  // cell (253, 2)
    const ShiftEstimate est = peak_shift(s, 0);
    CHECK(est.dx == -3);
    CHECK(est.dy == 2);
}

TEST_CASE("flat surfaces raise degenerate-surface with the response attached") {
    Surface s;
    s.width = 16;
    s.height = 16;
    s.values.assign(256, 0.2);
    try {
        peak_shift(s, 0);
        FAIL("expected degenerate-surface");
    } catch (const DegenerateSurfaceError& e) {
        CHECK(e.peak_response() == doctest::Approx(0.2));
        CHECK(e.kind() == "degenerate-surface");
    }
}

TEST_CASE("blank frame pairs escalate to degenerate-surface") {
    Frame f;
    f.width = 32;
    f.height = 32;
    f.pixels.assign(32 * 32, 0.6);
    CHECK_THROWS_AS(estimate_shift(f, f), DegenerateSurfaceError);
}

TEST_CASE("self correlation gives zero shift and unit response") {
    const Frame f = textured_base(64, 64, 19);
    const ShiftEstimate est = estimate_shift(f, f);
    CHECK(est.dx == 0);
    CHECK(est.dy == 0);
    CHECK(est.peak_response == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("large negative circular shift is recovered exactly") {
    const Frame f = textured_base(256, 256, 20);
    const Frame g = circular_shift(f, -40, 0);
    const ShiftEstimate est = estimate_shift(f, g);
    CHECK(est.dx == -40);
    CHECK(est.dy == 0);
}

TEST_CASE("swapping the frame order negates the estimate") {
    const Frame f = textured_base(64, 64, 21);
    for (auto [a, b] : {std::pair{7, 3}, std::pair{-12, 5}, std::pair{20, -9}}) {
        const Frame g = circular_shift(f, a, b);
        const ShiftEstimate fwd = estimate_shift(f, g);
        const ShiftEstimate rev = estimate_shift(g, f);
        CHECK(fwd.dx == a);
        CHECK(fwd.dy == b);
        CHECK(rev.dx == -a);
        CHECK(rev.dy == -b);
    }
}

TEST_CASE("circular-shift equivariance over random offsets") {
    const Frame f = textured_base(64, 64, 22);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int a = static_cast<int>(rng() % 63) - 31;
        const int b = static_cast<int>(rng() % 63) - 31;
        const ShiftEstimate est = estimate_shift(f, circular_shift(f, a, b));
        CHECK(est.dx == a);
        CHECK(est.dy == b);
    }
}

TEST_CASE("global intensity changes do not move the peak") {
    const Frame f = textured_base(64, 64, 24);
    const Frame g = circular_shift(f, 9, -4);
    auto remap = [](Frame frame, double scale, double offset) {
        for (double& v : frame.pixels) v = v * scale + offset;
        return frame;
    };
    const ShiftEstimate base = estimate_shift(f, g);
    const ShiftEstimate scaled = estimate_shift(remap(f, 0.5, 0.0), remap(g, 0.5, 0.0));
    const ShiftEstimate offset = estimate_shift(remap(f, 0.5, 0.3), remap(g, 0.5, 0.3));
    CHECK(base.dx == 9);
    CHECK(base.dy == -4);
    CHECK(scaled.dx == base.dx);
    CHECK(scaled.dy == base.dy);
    CHECK(offset.dx == base.dx);
    CHECK(offset.dy == base.dy);
}

TEST_CASE("fft pipeline matches the direct-DFT reference end to end") {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 6; ++trial) {
        const int size = trial % 2 ? 32 : 16;
        const Frame a = testsupport::random_frame(size, size, rng());
        const Frame b = testsupport::random_frame(size, size, rng());
        const Spectrum r = cross_power_spectrum(forward_transform(a), forward_transform(b), 1e-12);
        const Surface fast = correlation_surface(r);
        const Surface ref = testsupport::surface_direct(a, b, 1e-12);
        for (std::size_t i = 0; i < ref.values.size(); ++i) {
            CHECK(std::abs(fast.values[i] - ref.values[i]) <= 1e-6);
        }
        const ShiftEstimate est = peak_shift(fast, 0);
        const testsupport::PeakRef expected = testsupport::peak_direct(ref);
        CHECK(est.dx == expected.dx);
        CHECK(est.dy == expected.dy);
    }
}

TEST_CASE("hann window recovers a cropped (non-circular) translation") {
    // Two 64x64 views cut from one 96x96 texture, offset by (6,0): the
    // harder tier where frame content actually leaves the field of view.
    const Frame scene = textured_base(96, 96, 26);
    auto crop = [&](int x0, int y0) {
        Frame f;
        f.width = 64;
        f.height = 64;
        f.pixels.resize(64 * 64);
        for (int y = 0; y < 64; ++y) {
            for (int x = 0; x < 64; ++x) f.at(x, y) = scene.at(x + x0, y + y0);
        }
        return f;
    };
    const Frame a = crop(0, 16);
    const Frame b = crop(6, 16);
    CorrelationConfig config;
    config.window = WindowKind::Hann;
    const ShiftEstimate est = estimate_shift(a, b, config);
    CHECK(est.dx == 6);
    CHECK(est.dy == 0);
}
