#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wvsim/detector.hpp"
#include "wvsim/extraction.hpp"

namespace wvsim {

struct GridSpec {
    double start;
    double stop;
    int count;
};

/// Shared configuration of the three campaigns. Loaded from JSON, then
/// overridden by command-line flags (flags win).
struct CampaignConfig {
    /// Pre-selection override; default is |Sx;+>.
    std::optional<PostSelection> pre;
    double phi = 0.0;
    /// Post-selection theta for the fringe campaign (sweeps use theta_grid).
    double theta = 2.6179938779914944;  // 5 pi / 6
    GridSpec theta_grid{-3.141592653589793, 3.141592653589793, 61};
    double alpha = 0.2617993877991494;  // 15 deg
    EvolutionModel model = EvolutionModel::Exact;
    std::optional<DetectorModel> detector;  // nullopt = ideal
    ContrastPolicy policy = ContrastPolicy::Uniform;
    int replicates = 200;
    int chi_points = 33;
    int threads = 0;  // 0 = hardware concurrency
    std::string output;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
    StateVector pre_state() const;
};

/// Grid points with |<psi_f|psi_i>|^2 below this are emitted as skipped rows.
inline constexpr double kSkipOverlapSq = 1e-3;

// ---------------------------------------------------------------- fringe --

struct FringeRow {
    bool weak = false;  // false = alpha=0 reference scan
    double chi = 0.0;
    double i_o = 0.0;
    double i_h = 0.0;
    double expected = 0.0;
    std::optional<std::int64_t> sampled;  // absent in ideal mode
};

struct FringeResult {
    std::vector<FringeRow> rows;
    FringeFit fit_reference;
    FringeFit fit_weak;
    /// Located phase-shifter positions for I_x^+, I_x^-, I_y^+, I_y^-,
    /// read off the reference fit.
    std::array<double, 4> chi_positions{};
};

FringeResult run_fringe(const CampaignConfig& config);
void write_fringe_csv(std::ostream& os, const FringeResult& result);

// ----------------------------------------------------------------- sweep --

enum class RowStatus { Ok, Skipped, Failed };

struct SweepRow {
    double theta = 0.0;
    double phi = 0.0;
    RowStatus status = RowStatus::Ok;
    double overlap_sq = 0.0;
    WeakValueEstimate est;
    double re_true = 0.0;
    double im_true = 0.0;
    double mod_true = 0.0;
    std::string note;
};

std::vector<SweepRow> run_sweep(const CampaignConfig& config);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// ------------------------------------------------------------ montecarlo --

struct ComponentStats {
    double mean_est = 0.0;
    double empirical_sd = 0.0;
    double mean_se = 0.0;
    double pull_mean = 0.0;
    double pull_sd = 0.0;
};

struct MonteCarloRow {
    double theta = 0.0;
    double phi = 0.0;
    RowStatus status = RowStatus::Ok;
    int replicates = 0;
    ComponentStats re;
    ComponentStats im;
    ComponentStats modulus;
    int clamped_replicates = 0;
    int failed_replicates = 0;
};

/// Requires a detector config and replicates >= 2. Grid points run in
/// parallel; per-replicate randomness is keyed by (seed, point, replicate,
/// setting), so rows are identical for any worker count.
std::vector<MonteCarloRow> run_montecarlo(const CampaignConfig& config);
void write_montecarlo_csv(std::ostream& os, const std::vector<MonteCarloRow>& rows);

/// The six expected counts of one grid point under the detector model
/// (quartet order x+, x-, y+, y-; then pair z+, z-), plus one replicate's
/// sampled extraction. Exposed for the Monte-Carlo path and its tests.
std::array<double, 6> expected_setting_counts(const MeasurementSet& ideal,
                                              const DetectorModel& det);
WeakValueEstimate extract_replicate(const std::array<double, 6>& expected,
                                    const DetectorModel& det, Coupling c,
                                    ContrastPolicy policy, RandomStream replicate_stream);

}  // namespace wvsim
