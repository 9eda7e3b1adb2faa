#pragma once

#include "valring/graph.hpp"
#include "valring/incidence.hpp"
#include "valring/random.hpp"
#include "valring/ring.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valring {

enum class Experiment
{
	Spectrum,
	Mixing,
	Incidence,
	Energy,
	Thm1,
	Thm2,
	Plunnecke,
	All
};

std::string_view experiment_name(Experiment e) noexcept;
Experiment parse_experiment(std::string_view name);

/// Rings used when a config names none.
std::vector<std::string> default_ring_grid();

/// Experiment settings. Size parameters equal to 0 are drawn per trial.
struct ExperimentConfig
{
	std::vector<std::string> rings;
	Experiment experiment = Experiment::All;
	std::uint64_t trials = 100;
	std::uint64_t seed = 42;
	std::vector<unsigned> dims{3, 4};

	std::size_t points = 0;   ///< incidence |Q|
	std::size_t planes = 0;   ///< incidence |Pi|
	std::size_t lines = 0;    ///< energy |P|
	std::size_t set_size = 0; ///< energy |A|
	std::array<std::size_t, 3> sizes{0, 0, 0}; ///< thm1 |A|, |B|, |C|
	std::size_t thm2_size = 0;
	std::size_t plunnecke_size = 8; ///< upper bound on |A|, |B|

	std::uint64_t max_order = kDefaultMaxOrder;
	std::size_t max_part_size = kDefaultMaxPartSize;
	std::size_t max_theorem2_size = 40;

	std::string output;         ///< empty: stdout
	std::string format = "csv"; ///< csv | json
	int threads = 0;            ///< 0: OpenMP default; VALRING_THREADS overrides
	std::string solver = "auto";

	/// Throws ConfigError on any violated invariant, including unparsable rings.
	void validate() const;
	/// Sets one `key = value` entry; `ring` appends. Throws ConfigError.
	void set(std::string_view key, std::string_view value);
	std::vector<std::string> effective_rings() const;
};

/// Flat `key = value` lines, `#` comments, repeated `ring = <spec>` lines.
ExperimentConfig parse_config(std::istream &in);
ExperimentConfig load_config(const std::string &path);

struct TrialRecord
{
	std::string experiment;
	std::string ring;
	std::uint64_t trial = 0;
	std::string inputs; ///< `key=value` pairs joined by ';'
	double lhs = 0;
	double rhs = 0;
	std::optional<double> ratio;
	bool pass = false;
	double wall_ms = 0;
	/// Experiment-specific columns for the dedicated subcommand outputs.
	std::vector<std::pair<std::string, std::string>> columns;
};

struct ExperimentAggregate
{
	std::uint64_t trials = 0;
	std::uint64_t failures = 0;
	std::uint64_t ratios = 0;
	double min_ratio = 0;
	double max_ratio = 0;
};

struct Summary
{
	std::uint64_t total = 0;
	std::uint64_t failures = 0;
	std::map<std::string, ExperimentAggregate> per_experiment;
	std::vector<std::string> skipped; ///< (experiment, ring) blocks over a cap
};

struct RunResult
{
	std::vector<TrialRecord> records;
	Summary summary;
};

Summary summarize(std::span<const TrialRecord> records);

/// Runs the configured experiments over the ring grid. Records are ordered by
/// (experiment, ring, dimension, trial) regardless of the worker count.
RunResult run(const ExperimentConfig &config);

/// Worker count after applying VALRING_THREADS.
int resolve_threads(const ExperimentConfig &config);

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_csv(std::ostream &out, std::span<const TrialRecord> records);
/// `trial` followed by the experiment-specific columns of the records.
void write_detail_csv(std::ostream &out, std::span<const TrialRecord> records);
void write_json(std::ostream &out, std::span<const TrialRecord> records, const Summary &summary);

// Single-block runners shared by `run` and the CLI subcommands. `id` seeds
// the substreams: trial t uses derive_substream(seed, id, t).
std::vector<TrialRecord> run_spectrum(const RingPtr &ring, unsigned d, const ExperimentConfig &config);
std::vector<TrialRecord> run_mixing(const RingPtr &ring, unsigned d, const ExperimentConfig &config);
std::vector<TrialRecord> run_incidence(const RingPtr &ring, const ExperimentConfig &config);
std::vector<TrialRecord> run_energy(const RingPtr &ring, const ExperimentConfig &config);
std::vector<TrialRecord> run_thm1(const RingPtr &ring, const ExperimentConfig &config);
std::vector<TrialRecord> run_thm2(const RingPtr &ring, const ExperimentConfig &config);
std::vector<TrialRecord> run_plunnecke(const RingPtr &ring, const ExperimentConfig &config);

} // namespace valring
