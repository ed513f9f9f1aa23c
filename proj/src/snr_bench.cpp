#include "srtwifi/snr/bench.hpp"

#include <cmath>
#include <ostream>

namespace srtwifi::snr {

namespace {

struct Accumulator {
    double sum = 0, sum_sq = 0;
    int n = 0;
    void add(double x)
    {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double mean() const { return n ? sum / n : 0; }
    double stddev() const
    {
        if (n < 2)
            return 0;
        const double m = mean();
        return std::sqrt(std::max(0.0, (sum_sq - n * m * m) / (n - 1)));
    }
};

}  // namespace

std::vector<BenchPoint> estimator_bench(const BenchConfig& config)
{
    std::vector<BenchPoint> points;
    for (std::size_t pi = 0; pi < config.snr_points_db.size(); ++pi) {
        const double snr = config.snr_points_db[pi];
        Accumulator xc, pw;
        BenchPoint point;
        point.true_snr_db = snr;
        point.captures = config.captures_per_point;
        for (int c = 0; c < config.captures_per_point; ++c) {
            const std::uint64_t seed =
                config.seed + 1'000'003ull * pi + static_cast<std::uint64_t>(c);
            const StfCapture capture = synth_stf(snr, seed, config.synth);
            xc.add(snr_xcorr(capture).snr_db);
            const PowerEstimate pe = snr_power(capture);
            if (pe.below_floor)
                point.power_below_floor++;
            else
                pw.add(pe.snr_db);
        }
        point.xcorr_mean = xc.mean();
        point.xcorr_std = xc.stddev();
        point.power_mean = pw.mean();
        point.power_std = pw.stddev();
        points.push_back(point);
    }
    return points;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchPoint>& points)
{
    out << "true_snr,method,mean,std,n\n";
    for (const BenchPoint& p : points) {
        out << p.true_snr_db << ",xcorr," << p.xcorr_mean << ',' << p.xcorr_std << ','
            << p.captures << '\n';
        out << p.true_snr_db << ",power," << p.power_mean << ',' << p.power_std << ','
            << (p.captures - p.power_below_floor) << '\n';
    }
}

}  // namespace srtwifi::snr
