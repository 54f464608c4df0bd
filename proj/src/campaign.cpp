#include "wvsim/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "wvsim/csv.hpp"

namespace wvsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_positive(double x) {
    double w = std::fmod(x, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

std::vector<double> linspace(double start, double stop, int count) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (int k = 0; k < count; ++k) out.push_back(start + step * static_cast<double>(k));
    return out;
}

double closed_or_nan(const PostSelection& p, double WeakValue::* member) {
    try {
        return closed_form(p).*member;
    } catch (const orthogonal_postselection_error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

double closed_modulus_or_nan(const PostSelection& p) {
    try {
        return closed_form(p).modulus();
    } catch (const orthogonal_postselection_error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

ExtractionOptions options_for(const CampaignConfig& config) {
    ExtractionOptions opt;
    opt.policy = config.policy;
    if (config.detector) {
        opt.contrast = config.detector->contrast;
        opt.background_quartet = config.detector->background_rate * config.detector->exposure;
        opt.background_pair = opt.background_quartet;
        opt.poisson_errors = true;
    } else {
        opt.poisson_errors = false;
    }
    return opt;
}

// Run fn(i) for i in [0, n) on the configured number of workers; results are
// written by index, so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

const char* status_name(RowStatus s) {
    switch (s) {
        case RowStatus::Ok:
            return "ok";
        case RowStatus::Skipped:
            return "skipped";
        case RowStatus::Failed:
            return "failed";
    }
    return "?";
}

}  // namespace

void CampaignConfig::validate() const {
    if (!(theta_grid.count >= 2)) {
        throw std::invalid_argument("theta grid needs at least 2 points");
    }
    if (!(theta_grid.stop > theta_grid.start)) {
        throw std::invalid_argument("theta grid stop must exceed start");
    }
    if (!std::isfinite(phi) || !std::isfinite(theta) || !std::isfinite(alpha) ||
        !std::isfinite(theta_grid.start) || !std::isfinite(theta_grid.stop)) {
        throw std::invalid_argument("angles must be finite");
    }
    if (chi_points < 5) throw std::invalid_argument("fringe scans need at least 5 points");
    if (threads < 0) throw std::invalid_argument("thread count must be nonnegative");
    Coupling probe(alpha);  // range check
    (void)probe;
    if (detector) detector->validate();
}

StateVector CampaignConfig::pre_state() const {
    return pre ? spin_state(*pre) : spin_x_plus();
}

// ---------------------------------------------------------------- fringe --

FringeResult run_fringe(const CampaignConfig& config) {
    config.validate();
    const StateVector pre = config.pre_state();
    const PostSelection post(config.theta, config.phi);
    const std::vector<double> chis = linspace(0.0, kTwoPi, config.chi_points);

    FringeResult result;
    std::vector<std::pair<double, double>> ref_scan, weak_scan;

    for (int scan = 0; scan < 2; ++scan) {
        const bool weak = scan == 1;
        const Coupling c(weak ? config.alpha : 0.0);
        const auto beams = interferogram(chis, pre, post, c, config.model);
        for (size_t k = 0; k < chis.size(); ++k) {
            FringeRow row;
            row.weak = weak;
            row.chi = chis[k];
            row.i_o = beams[k].i_o;
            row.i_h = beams[k].i_h;
            if (config.detector) {
                const double fringe_mean = 0.5 * (beams[k].i_o + beams[k].i_h);
                row.expected = expected_counts(row.i_o, fringe_mean, *config.detector);
                RandomStream stream = RandomStream(config.detector->seed)
                                          .fork(static_cast<std::uint64_t>(scan))
                                          .fork(static_cast<std::uint64_t>(k));
                row.sampled = sample_counts(row.expected, stream);
            } else {
                row.expected = row.i_o;
            }
            const double fit_value =
                row.sampled ? static_cast<double>(*row.sampled) : row.expected;
            (weak ? weak_scan : ref_scan).emplace_back(row.chi, fit_value);
            result.rows.push_back(row);
        }
    }

    result.fit_reference = fit_fringe(ref_scan);
    result.fit_weak = fit_fringe(weak_scan);
    for (int k = 0; k < 4; ++k) {
        result.chi_positions[static_cast<size_t>(k)] =
            wrap_positive(0.5 * kPi * static_cast<double>(k) - result.fit_reference.phase_offset);
    }
    // order: x+, x-, y+, y-
    std::swap(result.chi_positions[1], result.chi_positions[2]);
    return result;
}

void write_fringe_csv(std::ostream& os, const FringeResult& result) {
    os << "scan,chi_rad,i_o_ideal,i_h_ideal,expected_counts,sampled_counts\n";
    for (const FringeRow& row : result.rows) {
        os << (row.weak ? "weak" : "reference") << ',' << format_number(row.chi) << ','
           << format_number(row.i_o) << ',' << format_number(row.i_h) << ','
           << format_number(row.expected) << ',';
        if (row.sampled) os << format_number(*row.sampled);
        os << '\n';
    }
    auto fit_line = [&os](const char* name, const FringeFit& fit) {
        os << "# fit scan=" << name << " mean=" << format_number(fit.mean)
           << " amplitude=" << format_number(fit.amplitude)
           << " phase_offset=" << format_number(fit.phase_offset)
           << " contrast_est=" << format_number(fit.contrast_est)
           << " residual_rms=" << format_number(fit.residual_rms) << '\n';
    };
    fit_line("reference", result.fit_reference);
    fit_line("weak", result.fit_weak);
    os << "# chi_positions x_plus=" << format_number(result.chi_positions[0])
       << " x_minus=" << format_number(result.chi_positions[1])
       << " y_plus=" << format_number(result.chi_positions[2])
       << " y_minus=" << format_number(result.chi_positions[3]) << '\n';
}

// ----------------------------------------------------------------- sweep --

namespace {

SweepRow sweep_point(const CampaignConfig& config, const StateVector& pre, double theta) {
    SweepRow row;
    row.theta = theta;
    row.phi = config.phi;
    const PostSelection post(theta, config.phi);
    row.re_true = closed_or_nan(post, &WeakValue::re);
    row.im_true = closed_or_nan(post, &WeakValue::im);
    row.mod_true = closed_modulus_or_nan(post);

    row.overlap_sq = std::norm(inner(spin_state(post), pre));
    if (row.overlap_sq < kSkipOverlapSq) {
        row.status = RowStatus::Skipped;
        row.note = "overlap below threshold";
        return row;
    }

    try {
        const Coupling c(config.alpha);
        const MeasurementSet ideal = ideal_measurements(pre, post, c, config.model);
        IntensityQuartet quartet = ideal.quartet;
        PolarimeterPair pair = ideal.pair;
        if (config.detector) {
            const DetectorModel& det = *config.detector;
            const auto counts = expected_setting_counts(ideal, det);
            quartet = IntensityQuartet{counts[0], counts[1], counts[2], counts[3]};
            pair = PolarimeterPair{counts[4], counts[5]};
        }
        row.est = extract(quartet, pair, c, options_for(config));
    } catch (const std::exception& e) {
        row.status = RowStatus::Failed;
        row.note = e.what();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.est = WeakValueEstimate{nan, nan, nan, 0.0, 0.0, 0.0, 0};
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const CampaignConfig& config) {
    config.validate();
    const StateVector pre = config.pre_state();
    const std::vector<double> thetas =
        linspace(config.theta_grid.start, config.theta_grid.stop, config.theta_grid.count);
    std::vector<SweepRow> rows(thetas.size());
    parallel_for(static_cast<int>(thetas.size()), config.threads, [&](int i) {
        rows[static_cast<size_t>(i)] =
            sweep_point(config, pre, thetas[static_cast<size_t>(i)]);
    });
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "theta,phi,status,re_est,se_re,im_est,se_im,mod_est,se_mod,"
          "re_true,im_true,mod_true,clamp_flags\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const SweepRow& row : rows) {
        const bool ok = row.status == RowStatus::Ok;
        os << format_number(row.theta) << ',' << format_number(row.phi) << ','
           << status_name(row.status) << ',' << format_number(ok ? row.est.re : nan) << ','
           << format_number(ok ? row.est.se_re : nan) << ','
           << format_number(ok ? row.est.im : nan) << ','
           << format_number(ok ? row.est.se_im : nan) << ','
           << format_number(ok ? row.est.modulus : nan) << ','
           << format_number(ok ? row.est.se_modulus : nan) << ','
           << format_number(row.re_true) << ',' << format_number(row.im_true) << ','
           << format_number(row.mod_true) << ',' << format_number(row.est.flags) << '\n';
    }
}

// ------------------------------------------------------------ montecarlo --

std::array<double, 6> expected_setting_counts(const MeasurementSet& ideal,
                                              const DetectorModel& det) {
    const double fringe_mean = 0.5 * (ideal.quartet.i_x_plus + ideal.quartet.i_x_minus);
    return {
        expected_counts(ideal.quartet.i_x_plus, fringe_mean, det),
        expected_counts(ideal.quartet.i_x_minus, fringe_mean, det),
        expected_counts(ideal.quartet.i_y_plus, fringe_mean, det),
        expected_counts(ideal.quartet.i_y_minus, fringe_mean, det),
        expected_counts_direct(ideal.pair.i_z_plus, det),
        expected_counts_direct(ideal.pair.i_z_minus, det),
    };
}

WeakValueEstimate extract_replicate(const std::array<double, 6>& expected,
                                    const DetectorModel& det, Coupling c,
                                    ContrastPolicy policy, RandomStream replicate_stream) {
    std::array<double, 6> counts{};
    for (size_t k = 0; k < 6; ++k) {
        RandomStream stream = replicate_stream.fork(static_cast<std::uint64_t>(k));
        counts[k] = static_cast<double>(sample_counts(expected[k], stream));
    }
    ExtractionOptions opt;
    opt.policy = policy;
    opt.contrast = det.contrast;
    opt.background_quartet = det.background_rate * det.exposure;
    opt.background_pair = opt.background_quartet;
    return extract(IntensityQuartet{counts[0], counts[1], counts[2], counts[3]},
                   PolarimeterPair{counts[4], counts[5]}, c, opt);
}

namespace {

struct PullAccumulator {
    double sum_est = 0.0, sum_est_sq = 0.0;
    double sum_se = 0.0;
    double sum_pull = 0.0, sum_pull_sq = 0.0;
    int n = 0;
    void add(double est, double se, double truth) {
        sum_est += est;
        sum_est_sq += est * est;
        sum_se += se;
        if (se > 0.0) {
            const double pull = (est - truth) / se;
            sum_pull += pull;
            sum_pull_sq += pull * pull;
            ++n;
        }
    }
    ComponentStats stats(int total) const {
        ComponentStats out;
        if (total > 0) {
            out.mean_est = sum_est / total;
            const double var = sum_est_sq / total - out.mean_est * out.mean_est;
            out.empirical_sd = var > 0.0 ? std::sqrt(var * total / std::max(1, total - 1)) : 0.0;
            out.mean_se = sum_se / total;
        }
        if (n > 0) {
            out.pull_mean = sum_pull / n;
            const double var = sum_pull_sq / n - out.pull_mean * out.pull_mean;
            out.pull_sd = var > 0.0 ? std::sqrt(var * n / std::max(1, n - 1)) : 0.0;
        }
        return out;
    }
};

MonteCarloRow montecarlo_point(const CampaignConfig& config, const StateVector& pre,
                               double theta, int point_index) {
    MonteCarloRow row;
    row.theta = theta;
    row.phi = config.phi;
    const PostSelection post(theta, config.phi);
    row.replicates = config.replicates;

    const StateVector f = spin_state(post);
    if (std::norm(inner(f, pre)) < kSkipOverlapSq) {
        row.status = RowStatus::Skipped;
        return row;
    }

    const Coupling c(config.alpha);
    const DetectorModel& det = *config.detector;
    const WeakValue truth = closed_form(post);
    std::array<double, 6> expected{};
    try {
        expected = expected_setting_counts(ideal_measurements(pre, post, c, config.model), det);
    } catch (const std::exception&) {
        row.status = RowStatus::Failed;
        return row;
    }

    PullAccumulator acc_re, acc_im, acc_mod;
    int successes = 0;
    const RandomStream point_stream =
        RandomStream(det.seed).fork(static_cast<std::uint64_t>(point_index));
    for (int rep = 0; rep < config.replicates; ++rep) {
        try {
            const WeakValueEstimate est = extract_replicate(
                expected, det, c, config.policy,
                point_stream.fork(static_cast<std::uint64_t>(rep)));
            if (est.clamped()) ++row.clamped_replicates;
            acc_re.add(est.re, est.se_re, truth.re);
            acc_im.add(est.im, est.se_im, truth.im);
            acc_mod.add(est.modulus, est.se_modulus, truth.modulus());
            ++successes;
        } catch (const std::exception&) {
            ++row.failed_replicates;
        }
    }
    row.re = acc_re.stats(successes);
    row.im = acc_im.stats(successes);
    row.modulus = acc_mod.stats(successes);
    return row;
}

}  // namespace

std::vector<MonteCarloRow> run_montecarlo(const CampaignConfig& config) {
    config.validate();
    if (!config.detector) {
        throw std::invalid_argument("montecarlo requires a detector configuration");
    }
    if (config.replicates < 2) {
        throw std::invalid_argument("montecarlo requires at least 2 replicates");
    }
    const StateVector pre = config.pre_state();
    const std::vector<double> thetas =
        linspace(config.theta_grid.start, config.theta_grid.stop, config.theta_grid.count);
    std::vector<MonteCarloRow> rows(thetas.size());
    parallel_for(static_cast<int>(thetas.size()), config.threads, [&](int i) {
        rows[static_cast<size_t>(i)] =
            montecarlo_point(config, pre, thetas[static_cast<size_t>(i)], i);
    });
    return rows;
}

void write_montecarlo_csv(std::ostream& os, const std::vector<MonteCarloRow>& rows) {
    os << "theta,phi,status,replicates,"
          "re_mean,re_emp_sd,re_mean_se,re_pull_mean,re_pull_sd,"
          "im_mean,im_emp_sd,im_mean_se,im_pull_mean,im_pull_sd,"
          "mod_mean,mod_emp_sd,mod_mean_se,mod_pull_mean,mod_pull_sd,"
          "clamped_replicates,failed_replicates\n";
    auto put = [&os](const ComponentStats& s) {
        os << ',' << format_number(s.mean_est) << ',' << format_number(s.empirical_sd) << ','
           << format_number(s.mean_se) << ',' << format_number(s.pull_mean) << ','
           << format_number(s.pull_sd);
    };
    for (const MonteCarloRow& row : rows) {
        os << format_number(row.theta) << ',' << format_number(row.phi) << ','
           << status_name(row.status) << ',' << format_number(row.replicates);
        put(row.re);
        put(row.im);
        put(row.modulus);
        os << ',' << format_number(row.clamped_replicates) << ','
           << format_number(row.failed_replicates) << '\n';
    }
}

}  // namespace wvsim
