#ifndef SRTWIFI_SNR_ESTIMATE_HPP
#define SRTWIFI_SNR_ESTIMATE_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace srtwifi::snr {

using Sample = std::complex<double>;

/// Complex baseband samples, nominally at 20 MHz.
struct SampleBuffer {
    std::vector<Sample> samples;
    double sample_rate_hz = 20e6;
};

/// A noise prefix followed by the 160-sample short training field,
/// aligned to the STF start.
struct StfCapture {
    SampleBuffer noise_prefix;  // length >= 64
    SampleBuffer stf;           // exactly 160 samples

    void validate() const;
};

constexpr std::size_t kStfSamples = 160;
constexpr std::size_t kStfPeriod = 16;
constexpr std::size_t kMinPrefix = 64;

struct SynthOptions {
    std::size_t prefix_len = kMinPrefix;
    /// Linear amplitude ramp over the first 32 STF samples, modeling the
    /// transmitter power-up transient the correlation method skips.
    bool transient_ramp = false;
};

/// Deterministic test capture: a fixed 16-sample constant-modulus base
/// symbol tiled 10 times at the amplitude giving the requested SNR, plus
/// unit-power circular Gaussian noise everywhere (alone in the prefix).
StfCapture synth_stf(double snr_db, std::uint64_t seed,
                     const SynthOptions& options = {});

struct XcorrEstimate {
    double snr_db = 0;
    double rho = 0;
    bool clamped = false;  // rho hit the [eps, 1-eps] guard
};

/// Cross-correlation estimator: chips 33..160 split into two 64-chip
/// groups; rho is the magnitude of their normalized inner product and
/// SNR = 10*log10(rho / (1 - rho)).
XcorrEstimate snr_xcorr(const StfCapture& capture);

struct PowerEstimate {
    double snr_db = 0;
    bool below_floor = false;  // P_STF <= P_noise; snr_db is not meaningful
};

/// Power-ratio estimator: SNR = 10*log10((P_STF - P_noise) / P_noise)
/// with P_noise from the prefix and P_STF over the 160 STF samples.
PowerEstimate snr_power(const StfCapture& capture);

/// Capture file format: 16-byte header ("SRTW", u32 sample_count,
/// f32 sample_rate, u32 prefix_len) then interleaved float32 I/Q,
/// little-endian, prefix first.
void write_capture(std::ostream& out, const StfCapture& capture);
StfCapture read_capture(std::istream& in);

}  // namespace srtwifi::snr

#endif
