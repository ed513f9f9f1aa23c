#include "srtwifi/snr/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <string_view>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace srtwifi::snr {

void StfCapture::validate() const
{
    if (stf.samples.size() != kStfSamples)
        throw std::invalid_argument("StfCapture: STF must be exactly 160 samples");
    if (noise_prefix.samples.size() < kMinPrefix)
        throw std::invalid_argument("StfCapture: noise prefix must be >= 64 samples");
    for (const SampleBuffer* buf : {&noise_prefix, &stf})
        for (const Sample& s : buf->samples)
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                throw std::invalid_argument("StfCapture: non-finite sample");
}

namespace {

// Zadoff-Chu style constant-modulus base symbol; the estimators only rely
// on the 16-sample periodicity.
Sample base_symbol(std::size_t n)
{
    const double phase = -std::numbers::pi * static_cast<double>(n * n) /
                         static_cast<double>(kStfPeriod);
    return {std::cos(phase), std::sin(phase)};
}

std::uint64_t splitmix64(std::uint64_t& state)
{
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Box-Muller on a splitmix stream: portable and reproducible.
struct Gauss {
    std::uint64_t state;
    explicit Gauss(std::uint64_t seed) : state(seed) {}
    double u01()
    {
        return (static_cast<double>(splitmix64(state) >> 11) + 0.5) * 0x1.0p-53;
    }
    Sample complex_unit_power()
    {
        const double r = std::sqrt(-std::log(u01()));  // per-component var 1/2
        const double phi = 2.0 * std::numbers::pi * u01();
        return {r * std::cos(phi), r * std::sin(phi)};
    }
};

double mean_power(const std::vector<Sample>& v)
{
    double acc = 0;
    for (const Sample& s : v)
        acc += std::norm(s);
    return acc / static_cast<double>(v.size());
}

}  // namespace

StfCapture synth_stf(double snr_db, std::uint64_t seed, const SynthOptions& options)
{
    if (options.prefix_len < kMinPrefix)
        throw std::invalid_argument("synth_stf: prefix must be >= 64 samples");

    const double amplitude = std::pow(10.0, snr_db / 20.0);  // noise power is 1
    Gauss rng(seed);

    StfCapture capture;
    capture.noise_prefix.samples.resize(options.prefix_len);
    for (Sample& s : capture.noise_prefix.samples)
        s = rng.complex_unit_power();

    capture.stf.samples.resize(kStfSamples);
    for (std::size_t n = 0; n < kStfSamples; ++n) {
        double gain = amplitude;
        if (options.transient_ramp && n < 2 * kStfPeriod)
            gain *= static_cast<double>(n + 1) / static_cast<double>(2 * kStfPeriod);
        capture.stf.samples[n] =
            gain * base_symbol(n % kStfPeriod) + rng.complex_unit_power();
    }
    return capture;
}

XcorrEstimate snr_xcorr(const StfCapture& capture)
{
    capture.validate();
    const auto& stf = capture.stf.samples;

    // Chips 33..160 (1-indexed): two groups of 64.
    Sample inner{0, 0};
    double n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < 64; ++i) {
        const Sample& a = stf[32 + i];
        const Sample& b = stf[96 + i];
        inner += a * std::conj(b);
        n1 += std::norm(a);
        n2 += std::norm(b);
    }

    XcorrEstimate est;
    est.rho = std::abs(inner) / std::sqrt(n1 * n2);
    constexpr double eps = 1e-6;
    if (est.rho < eps || est.rho > 1.0 - eps) {
        est.rho = std::clamp(est.rho, eps, 1.0 - eps);
        est.clamped = true;
    }
    est.snr_db = 10.0 * std::log10(est.rho / (1.0 - est.rho));
    return est;
}

PowerEstimate snr_power(const StfCapture& capture)
{
    capture.validate();
    const double p_noise = mean_power(capture.noise_prefix.samples);
    const double p_stf = mean_power(capture.stf.samples);

    PowerEstimate est;
    if (p_stf <= p_noise || p_noise <= 0) {
        est.below_floor = true;
        return est;
    }
    est.snr_db = 10.0 * std::log10((p_stf - p_noise) / p_noise);
    return est;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v)
{
    const unsigned char b[4] = {
        static_cast<unsigned char>(v & 0xFF), static_cast<unsigned char>((v >> 8) & 0xFF),
        static_cast<unsigned char>((v >> 16) & 0xFF),
        static_cast<unsigned char>((v >> 24) & 0xFF)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in)
{
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw std::runtime_error("capture: truncated input");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& out, float v)
{
    std::uint32_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

float get_f32(std::istream& in)
{
    const std::uint32_t bits = get_u32(in);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

}  // namespace

void write_capture(std::ostream& out, const StfCapture& capture)
{
    capture.validate();
    out.write("SRTW", 4);
    const std::size_t total = capture.noise_prefix.samples.size() + kStfSamples;
    put_u32(out, static_cast<std::uint32_t>(total));
    put_f32(out, static_cast<float>(capture.stf.sample_rate_hz));
    put_u32(out, static_cast<std::uint32_t>(capture.noise_prefix.samples.size()));
    for (const SampleBuffer* buf : {&capture.noise_prefix, &capture.stf})
        for (const Sample& s : buf->samples) {
            put_f32(out, static_cast<float>(s.real()));
            put_f32(out, static_cast<float>(s.imag()));
        }
}

StfCapture read_capture(std::istream& in)
{
    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != "SRTW")
        throw std::runtime_error("capture: bad magic");
    const std::uint32_t total = get_u32(in);
    const float rate = get_f32(in);
    const std::uint32_t prefix_len = get_u32(in);
    if (total < prefix_len || total - prefix_len != kStfSamples)
        throw std::runtime_error("capture: inconsistent sample counts");

    StfCapture capture;
    capture.noise_prefix.sample_rate_hz = rate;
    capture.stf.sample_rate_hz = rate;
    capture.noise_prefix.samples.resize(prefix_len);
    capture.stf.samples.resize(kStfSamples);
    for (SampleBuffer* buf : {&capture.noise_prefix, &capture.stf})
        for (Sample& s : buf->samples) {
            const float re = get_f32(in);
            const float im = get_f32(in);
            s = {re, im};
        }
    capture.validate();
    return capture;
}

}  // namespace srtwifi::snr
