#ifndef SRTWIFI_SNR_BENCH_HPP
#define SRTWIFI_SNR_BENCH_HPP

#include <iosfwd>
#include <vector>

#include "srtwifi/snr/estimate.hpp"

namespace srtwifi::snr {

struct BenchPoint {
    double true_snr_db = 0;
    int captures = 0;
    double xcorr_mean = 0, xcorr_std = 0;
    double power_mean = 0, power_std = 0;
    int power_below_floor = 0;
};

struct BenchConfig {
    std::vector<double> snr_points_db = {7, 10, 13, 15, 17, 19, 22, 25, 30};
    int captures_per_point = 1000;
    std::uint64_t seed = 12345;
    SynthOptions synth;
};

/// Monte Carlo comparison of the two estimators against the synthetic
/// generator. Deterministic from the seed.
std::vector<BenchPoint> estimator_bench(const BenchConfig& config);

/// CSV: true_snr,method,mean,std,n
void write_bench_csv(std::ostream& out, const std::vector<BenchPoint>& points);

}  // namespace srtwifi::snr

#endif
