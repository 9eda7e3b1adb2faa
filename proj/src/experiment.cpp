#include "valring/experiment.hpp"

#include "valring/error.hpp"
#include "valring/kernels.hpp"
#include "valring/sumprod.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace valring {

namespace {

constexpr std::array<Experiment, 7> kAllExperiments{Experiment::Spectrum, Experiment::Mixing, Experiment::Incidence,
                                                    Experiment::Energy,   Experiment::Thm1,   Experiment::Thm2,
                                                    Experiment::Plunnecke};

std::string trim(std::string_view s)
{
	const auto b = s.find_first_not_of(" \t\r\n");
	if (b == std::string_view::npos)
		return {};
	const auto e = s.find_last_not_of(" \t\r\n");
	return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64(std::string_view key, std::string_view value)
{
	std::uint64_t v = 0;
	const auto s = trim(value);
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
		throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(value) + "'");
	return v;
}

std::vector<std::uint64_t> parse_list(std::string_view key, std::string_view value)
{
	std::vector<std::uint64_t> out;
	std::string item;
	std::istringstream in{std::string(value)};
	while (std::getline(in, item, ','))
		out.push_back(parse_u64(key, item));
	if (out.empty())
		throw ConfigError("'" + std::string(key) + "' expects a comma-separated list");
	return out;
}

std::string kv(std::initializer_list<std::pair<const char *, std::string>> items)
{
	std::string out;
	for (const auto &[k, v] : items)
	{
		if (!out.empty())
			out += ';';
		out += k;
		out += '=';
		out += v;
	}
	return out;
}

std::string str(std::uint64_t v)
{
	return std::to_string(v);
}

std::optional<double> ratio_of(double lhs, double rhs)
{
	if (rhs > 0)
		return lhs / rhs;
	return std::nullopt;
}

ElemSet random_subset(Rng &rng, const RingPtr &ring, std::size_t k)
{
	std::vector<RingElem> members;
	for (auto v : sample_distinct(rng, ring->order(), k))
		members.emplace_back(static_cast<std::uint32_t>(v));
	return ElemSet(ring, std::move(members));
}

std::size_t pick_size(Rng &rng, std::size_t configured, std::size_t upper)
{
	if (upper == 0)
		return 0;
	if (configured == 0)
		return static_cast<std::size_t>(rng.between(1, upper));
	return std::min(configured, upper);
}

// Runs `body` for every trial index, in parallel, storing records by index.
template <class Body>
std::vector<TrialRecord> for_trials(const ExperimentConfig &config, Experiment exp, const RingPtr &ring,
                                    const std::string &id, Body &&body)
{
	const auto n = static_cast<std::int64_t>(config.trials);
	std::vector<TrialRecord> out(static_cast<std::size_t>(n));
	const std::string spec = ring->spec_string();
	std::exception_ptr failure;
	std::mutex failure_mutex;

#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(config))
	for (std::int64_t t = 0; t < n; ++t)
	{
		try
		{
			const auto start = std::chrono::steady_clock::now();
			Rng rng = derive_substream(config.seed, id, static_cast<std::uint64_t>(t));
			TrialRecord rec;
			rec.experiment = std::string(experiment_name(exp));
			rec.ring = spec;
			rec.trial = static_cast<std::uint64_t>(t);
			body(rng, rec);
			rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
			out[static_cast<std::size_t>(t)] = std::move(rec);
		}
		catch (...)
		{
			std::lock_guard lock(failure_mutex);
			if (!failure)
				failure = std::current_exception();
		}
	}
	if (failure)
		std::rethrow_exception(failure);
	return out;
}

std::string block_id(Experiment exp, const RingPtr &ring, std::optional<unsigned> d = std::nullopt)
{
	std::string id = std::string(experiment_name(exp)) + "/" + ring->spec_string();
	if (d)
		id += "/d" + std::to_string(*d);
	return id;
}

} // namespace

std::string_view experiment_name(Experiment e) noexcept
{
	switch (e)
	{
	case Experiment::Spectrum:
		return "spectrum";
	case Experiment::Mixing:
		return "mixing";
	case Experiment::Incidence:
		return "incidence";
	case Experiment::Energy:
		return "energy";
	case Experiment::Thm1:
		return "thm1";
	case Experiment::Thm2:
		return "thm2";
	case Experiment::Plunnecke:
		return "plunnecke";
	case Experiment::All:
		return "all";
	}
	return "unknown";
}

Experiment parse_experiment(std::string_view name)
{
	for (auto e : kAllExperiments)
		if (experiment_name(e) == name)
			return e;
	if (name == "all")
		return Experiment::All;
	throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<std::string> default_ring_grid()
{
	return {"Z/2^2", "Z/2^3", "Z/3^2", "GF(2)[t]/t^2", "GF(3)[t]/t^2"};
}

std::vector<std::string> ExperimentConfig::effective_rings() const
{
	return rings.empty() ? default_ring_grid() : rings;
}

void ExperimentConfig::validate() const
{
	if (trials < 1)
		throw ConfigError("trials must be at least 1");
	if (dims.empty())
		throw ConfigError("at least one dimension is required");
	for (auto d : dims)
		if (d < 2)
			throw ConfigError("dimensions must be at least 2");
	if (format != "csv" && format != "json")
		throw ConfigError("format must be csv or json, got '" + format + "'");
	if (max_part_size < 1 || max_theorem2_size < 1 || max_order < 2)
		throw ConfigError("caps must admit at least the smallest ring");
	if (plunnecke_size < 1)
		throw ConfigError("plunnecke_size must be at least 1");
	try
	{
		parse_backend(solver);
		for (const auto &spec : effective_rings())
			Ring::parse(spec, max_order);
	}
	catch (const ParseError &e)
	{
		throw ConfigError(e.what());
	}
	catch (const CapacityError &e)
	{
		throw ConfigError(e.what());
	}
}

void ExperimentConfig::set(std::string_view key_in, std::string_view value_in)
{
	const std::string key = trim(key_in);
	const std::string value = trim(value_in);
	if (key == "ring")
		rings.push_back(value);
	else if (key == "experiment")
		experiment = parse_experiment(value);
	else if (key == "trials")
		trials = parse_u64(key, value);
	else if (key == "seed")
		seed = parse_u64(key, value);
	else if (key == "dims")
	{
		dims.clear();
		for (auto d : parse_list(key, value))
			dims.push_back(static_cast<unsigned>(d));
	}
	else if (key == "points")
		points = parse_u64(key, value);
	else if (key == "planes")
		planes = parse_u64(key, value);
	else if (key == "lines")
		lines = parse_u64(key, value);
	else if (key == "set_size")
		set_size = parse_u64(key, value);
	else if (key == "sizes")
	{
		const auto list = parse_list(key, value);
		if (list.size() != 3)
			throw ConfigError("sizes expects three values a,b,c");
		sizes = {list[0], list[1], list[2]};
	}
	else if (key == "thm2_size")
		thm2_size = parse_u64(key, value);
	else if (key == "plunnecke_size")
		plunnecke_size = parse_u64(key, value);
	else if (key == "max_order")
		max_order = parse_u64(key, value);
	else if (key == "max_part_size")
		max_part_size = parse_u64(key, value);
	else if (key == "max_theorem2_size")
		max_theorem2_size = parse_u64(key, value);
	else if (key == "output")
		output = value;
	else if (key == "format")
		format = value;
	else if (key == "threads")
		threads = static_cast<int>(parse_u64(key, value));
	else if (key == "solver")
		solver = value;
	else
		throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::istream &in)
{
	ExperimentConfig config;
	std::string line;
	int lineno = 0;
	while (std::getline(in, line))
	{
		++lineno;
		if (const auto hash = line.find('#'); hash != std::string::npos)
			line.erase(hash);
		if (trim(line).empty())
			continue;
		const auto eq = line.find('=');
		if (eq == std::string::npos)
			throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
		config.set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
	}
	return config;
}

ExperimentConfig load_config(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ConfigError("cannot open config file '" + path + "'");
	return parse_config(in);
}

int resolve_threads(const ExperimentConfig &config)
{
	if (const char *env = std::getenv("VALRING_THREADS"); env != nullptr && *env != '\0')
	{
		const int t = std::atoi(env);
		if (t > 0)
			return t;
	}
	if (config.threads > 0)
		return config.threads;
#ifdef _OPENMP
	return omp_get_max_threads();
#else
	return 1;
#endif
}

std::string format_double(double v)
{
	if (std::isnan(v))
		return "nan";
	if (std::isinf(v))
		return v > 0 ? "inf" : "-inf";
	char buf[64];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
	if (ec != std::errc())
	{
		auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
		ptr = res.ptr;
	}
	return std::string(buf, ptr);
}

std::vector<TrialRecord> run_spectrum(const RingPtr &ring, unsigned d, const ExperimentConfig &config)
{
	const auto start = std::chrono::steady_clock::now();
	const auto g = build_graph(ring, d, config.max_part_size);
	const auto rep = spectrum(g, parse_backend(config.solver));
	TrialRecord rec;
	rec.experiment = "spectrum";
	rec.ring = ring->spec_string();
	rec.inputs = kv({{"d", str(d)}, {"part", str(rep.part_size)}, {"degree", str(rep.degree)}});
	rec.lhs = rep.lambda3;
	rec.rhs = rep.bound;
	rec.ratio = ratio_of(rec.lhs, rec.rhs);
	rec.pass = rep.pass;
	rec.columns = {{"d", str(d)},
	               {"part_size", str(rep.part_size)},
	               {"degree", str(rep.degree)},
	               {"sigma1", format_double(rep.singular_values.empty() ? 0.0 : rep.singular_values[0])},
	               {"lambda3", format_double(rep.lambda3)},
	               {"bound", format_double(rep.bound)},
	               {"pass", rep.pass ? "true" : "false"}};
	rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	return {rec};
}

std::vector<TrialRecord> run_mixing(const RingPtr &ring, unsigned d, const ExperimentConfig &config)
{
	const auto g = build_graph(ring, d, config.max_part_size);
	const auto spec = spectrum(g, parse_backend(config.solver));
	const std::size_t n = g.part_size();

	return for_trials(config, Experiment::Mixing, ring, block_id(Experiment::Mixing, ring, d),
	                  [&](Rng &rng, TrialRecord &rec) {
		                  const double px = static_cast<double>(1 + rng.below(9)) / 10.0;
		                  const double py = static_cast<double>(1 + rng.below(9)) / 10.0;
		                  std::vector<std::size_t> x, y;
		                  for (std::size_t i = 0; i < n; ++i)
			                  if (rng.bernoulli(px))
				                  x.push_back(i);
		                  for (std::size_t j = 0; j < n; ++j)
			                  if (rng.bernoulli(py))
				                  y.push_back(j);
		                  const auto m = mixing_check(g, x, y, spec.lambda3);
		                  rec.inputs = kv({{"d", str(d)}, {"X", str(m.x_size)}, {"Y", str(m.y_size)}});
		                  rec.lhs = std::abs(static_cast<double>(m.edges) - m.main_term);
		                  rec.rhs = m.error_bound;
		                  rec.ratio = ratio_of(rec.lhs, rec.rhs);
		                  rec.pass = m.pass;
		                  rec.columns = {{"|X|", str(m.x_size)},
		                                 {"|Y|", str(m.y_size)},
		                                 {"e", str(m.edges)},
		                                 {"main_term", format_double(m.main_term)},
		                                 {"error_bound", format_double(m.error_bound)},
		                                 {"pass", m.pass ? "true" : "false"}};
	                  });
}

std::vector<TrialRecord> run_incidence(const RingPtr &ring, const ExperimentConfig &config)
{
	const auto classes = enumerate_classes(ring, 4);
	std::optional<BipartiteGraph> graph;
	if (classes.size() <= config.max_part_size)
		graph = build_graph(ring, 4, config.max_part_size);
	const std::uint64_t order = ring->order();
	const std::uint64_t point_space = order * order * order;

	return for_trials(
	    config, Experiment::Incidence, ring, block_id(Experiment::Incidence, ring), [&](Rng &rng, TrialRecord &rec) {
		    const auto nq = pick_size(rng, config.points, static_cast<std::size_t>(std::min<std::uint64_t>(point_space, 256)));
		    const auto np = pick_size(rng, config.planes, std::min<std::size_t>(classes.size(), 256));
		    std::vector<Point3> pts;
		    for (auto code : sample_distinct(rng, point_space, nq))
			    pts.push_back({RingElem(static_cast<std::uint32_t>(code % order)),
			                   RingElem(static_cast<std::uint32_t>(code / order % order)),
			                   RingElem(static_cast<std::uint32_t>(code / order / order))});
		    std::vector<Plane3> planes;
		    for (auto idx : sample_distinct(rng, classes.size(), np))
			    planes.push_back(Plane3::from_class(classes[idx]));

		    const auto rep = count_incidences(ring, pts, planes, graph ? &*graph : nullptr);
		    const bool ok = rep.pass && rep.cross_check_edges == rep.incidences;
		    rec.inputs = kv({{"Q", str(rep.num_points)}, {"Pi", str(rep.num_planes)}});
		    rec.lhs = std::abs(static_cast<double>(rep.incidences) - rep.main_term);
		    rec.rhs = rep.error_bound;
		    rec.ratio = ratio_of(rec.lhs, rec.rhs);
		    rec.pass = ok;
		    rec.columns = {{"|Q|", str(rep.num_points)},
		                   {"|Π|", str(rep.num_planes)},
		                   {"I", str(rep.incidences)},
		                   {"main", format_double(rep.main_term)},
		                   {"bound", format_double(rep.error_bound)},
		                   {"edges", str(rep.cross_check_edges)},
		                   {"pass", ok ? "true" : "false"}};
	    });
}

namespace {

void sumprod_columns(TrialRecord &rec)
{
	rec.columns = {{"sizes", rec.inputs},
	               {"lhs", format_double(rec.lhs)},
	               {"rhs", format_double(rec.rhs)},
	               {"ratio", rec.ratio ? format_double(*rec.ratio) : ""},
	               {"pass", rec.pass ? "true" : "false"}};
}

} // namespace

std::vector<TrialRecord> run_energy(const RingPtr &ring, const ExperimentConfig &config)
{
	const std::uint64_t order = ring->order();
	return for_trials(config, Experiment::Energy, ring, block_id(Experiment::Energy, ring),
	                  [&](Rng &rng, TrialRecord &rec) {
		                  const auto np = pick_size(rng, config.lines, static_cast<std::size_t>(std::min<std::uint64_t>(order * order, 64)));
		                  const auto na = pick_size(rng, config.set_size, static_cast<std::size_t>(order));
		                  LineFamily lines(ring);
		                  for (auto code : sample_distinct(rng, order * order, np))
			                  lines.add(RingElem(static_cast<std::uint32_t>(code % order)),
			                            RingElem(static_cast<std::uint32_t>(code / order)));
		                  const auto a = random_subset(rng, ring, na);
		                  const auto rep = energy(lines, a);
		                  rec.inputs = kv({{"P", str(rep.distinct_lines)},
		                                   {"A", str(rep.set_size)},
		                                   {"LA", str(rep.evaluation_set_size)}});
		                  rec.lhs = static_cast<double>(rep.energy);
		                  rec.rhs = rep.rhs;
		                  rec.ratio = ratio_of(rec.lhs, rec.rhs);
		                  rec.pass = rep.pass();
		                  sumprod_columns(rec);
	                  });
}

std::vector<TrialRecord> run_thm1(const RingPtr &ring, const ExperimentConfig &config)
{
	const auto order = static_cast<std::size_t>(ring->order());
	return for_trials(config, Experiment::Thm1, ring, block_id(Experiment::Thm1, ring),
	                  [&](Rng &rng, TrialRecord &rec) {
		                  const auto na = pick_size(rng, config.sizes[0], order);
		                  const auto nb = pick_size(rng, config.sizes[1], order);
		                  const auto nc = pick_size(rng, config.sizes[2], order);
		                  const auto a = random_subset(rng, ring, na);
		                  const auto b = random_subset(rng, ring, nb);
		                  const auto c = random_subset(rng, ring, nc);
		                  const auto res = check_theorem1(a, b, c);
		                  rec.inputs = kv({{"A", str(na)}, {"B", str(nb)}, {"C", str(nc)}});
		                  rec.lhs = static_cast<double>(res.lhs);
		                  rec.rhs = res.rhs;
		                  rec.ratio = ratio_of(rec.lhs, rec.rhs);
		                  rec.pass = res.pass;
		                  sumprod_columns(rec);
	                  });
}

std::vector<TrialRecord> run_thm2(const RingPtr &ring, const ExperimentConfig &config)
{
	const auto upper = std::min<std::size_t>(static_cast<std::size_t>(ring->order()), config.max_theorem2_size);
	return for_trials(config, Experiment::Thm2, ring, block_id(Experiment::Thm2, ring),
	                  [&](Rng &rng, TrialRecord &rec) {
		                  const auto n = pick_size(rng, config.thm2_size, upper);
		                  const auto a = random_subset(rng, ring, n);
		                  const auto res = check_theorem2(a, config.max_theorem2_size);
		                  rec.inputs = kv({{"A", str(n)},
		                                   {"A+A", str(res.sumset_size)},
		                                   {"A2+A2", str(res.square_sumset_size)},
		                                   {"E", str(res.energy_squares)},
		                                   {"hypothesis", res.hypothesis ? "1" : "0"},
		                                   {"weighted_collision", res.step_collision ? "1" : "0"}});
		                  if (res.characteristic_two)
			                  rec.inputs += ";char2";
		                  rec.lhs = static_cast<double>(res.sixth_power);
		                  rec.rhs = static_cast<double>(res.threefold_squares) * static_cast<double>(res.energy_squares);
		                  rec.ratio = res.ratio;
		                  rec.pass = res.pass();
		                  sumprod_columns(rec);
	                  });
}

std::vector<TrialRecord> run_plunnecke(const RingPtr &ring, const ExperimentConfig &config)
{
	const auto order = static_cast<std::size_t>(ring->order());
	static constexpr std::array<Rational, 3> deltas{Rational{1, 4}, Rational{1, 2}, Rational{3, 4}};
	return for_trials(config, Experiment::Plunnecke, ring, block_id(Experiment::Plunnecke, ring),
	                  [&](Rng &rng, TrialRecord &rec) {
		                  const auto na = pick_size(rng, 0, std::min({order, config.plunnecke_size, kMaxPlunneckeSize}));
		                  const auto nb = pick_size(rng, 0, std::min(order, config.plunnecke_size));
		                  const auto delta = deltas[rng.below(3)];
		                  const auto k = static_cast<unsigned>(2 + rng.below(2));
		                  const auto a = random_subset(rng, ring, na);
		                  const auto b = random_subset(rng, ring, nb);
		                  const auto res = plunnecke_verify(a, b, delta, k);
		                  rec.inputs = kv({{"A", str(na)},
		                                   {"B", str(nb)},
		                                   {"delta", str(delta.num) + "/" + str(delta.den)},
		                                   {"k", str(k)},
		                                   {"X", res.found() ? str(res.witness->size()) : "none"}});
		                  rec.lhs = static_cast<double>(res.witness_sumset);
		                  rec.rhs = res.bound;
		                  rec.ratio = res.found() ? ratio_of(rec.lhs, rec.rhs) : std::nullopt;
		                  rec.pass = res.found();
		                  sumprod_columns(rec);
	                  });
}

Summary summarize(std::span<const TrialRecord> records)
{
	Summary s;
	for (const auto &rec : records)
	{
		++s.total;
		auto &agg = s.per_experiment[rec.experiment];
		++agg.trials;
		if (!rec.pass)
		{
			++s.failures;
			++agg.failures;
		}
		if (rec.ratio)
		{
			if (agg.ratios == 0)
				agg.min_ratio = agg.max_ratio = *rec.ratio;
			agg.min_ratio = std::min(agg.min_ratio, *rec.ratio);
			agg.max_ratio = std::max(agg.max_ratio, *rec.ratio);
			++agg.ratios;
		}
	}
	return s;
}

RunResult run(const ExperimentConfig &config)
{
	config.validate();
	kernels::set_thread_count(resolve_threads(config));

	std::vector<Experiment> experiments;
	if (config.experiment == Experiment::All)
		experiments.assign(kAllExperiments.begin(), kAllExperiments.end());
	else
		experiments.push_back(config.experiment);

	RunResult result;
	std::vector<std::string> skipped;
	auto append = [&](std::vector<TrialRecord> recs) {
		for (auto &r : recs)
			result.records.push_back(std::move(r));
	};

	for (auto exp : experiments)
		for (const auto &spec : config.effective_rings())
		{
			const auto ring = Ring::parse(spec, config.max_order);
			try
			{
				switch (exp)
				{
				case Experiment::Spectrum:
				case Experiment::Mixing:
					for (auto d : config.dims)
					{
						if (class_count_formula(ring->q(), ring->r(), d) > config.max_part_size)
						{
							skipped.push_back(block_id(exp, ring, d));
							continue;
						}
						append(exp == Experiment::Spectrum ? run_spectrum(ring, d, config)
						                                   : run_mixing(ring, d, config));
					}
					break;
				case Experiment::Incidence:
					append(run_incidence(ring, config));
					break;
				case Experiment::Energy:
					append(run_energy(ring, config));
					break;
				case Experiment::Thm1:
					append(run_thm1(ring, config));
					break;
				case Experiment::Thm2:
					append(run_thm2(ring, config));
					break;
				case Experiment::Plunnecke:
					append(run_plunnecke(ring, config));
					break;
				case Experiment::All:
					break;
				}
			}
			catch (const CapacityError &)
			{
				skipped.push_back(block_id(exp, ring));
			}
		}

	result.summary = summarize(result.records);
	result.summary.skipped = std::move(skipped);
	return result;
}

namespace {

std::string csv_field(const std::string &s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char c : s)
	{
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

} // namespace

void write_csv(std::ostream &out, std::span<const TrialRecord> records)
{
	out << "experiment,ring,trial,sizes,lhs,rhs,ratio,pass\n";
	for (const auto &r : records)
		out << csv_field(r.experiment) << ',' << csv_field(r.ring) << ',' << r.trial << ',' << csv_field(r.inputs)
		    << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
		    << (r.ratio ? format_double(*r.ratio) : "") << ',' << (r.pass ? "true" : "false") << '\n';
}

void write_detail_csv(std::ostream &out, std::span<const TrialRecord> records)
{
	if (records.empty())
		return;
	out << "trial";
	for (const auto &[name, value] : records.front().columns)
		out << ',' << csv_field(name);
	out << '\n';
	for (const auto &r : records)
	{
		out << r.trial;
		for (const auto &[name, value] : r.columns)
			out << ',' << csv_field(value);
		out << '\n';
	}
}

void write_json(std::ostream &out, std::span<const TrialRecord> records, const Summary &summary)
{
	nlohmann::ordered_json doc;
	auto &arr = doc["records"] = nlohmann::ordered_json::array();
	for (const auto &r : records)
	{
		nlohmann::ordered_json j;
		j["experiment"] = r.experiment;
		j["ring"] = r.ring;
		j["trial"] = r.trial;
		j["inputs"] = r.inputs;
		j["lhs"] = r.lhs;
		j["rhs"] = r.rhs;
		j["ratio"] = r.ratio ? nlohmann::ordered_json(*r.ratio) : nlohmann::ordered_json(nullptr);
		j["pass"] = r.pass;
		j["wall_ms"] = r.wall_ms;
		arr.push_back(std::move(j));
	}
	auto &s = doc["summary"];
	s["total"] = summary.total;
	s["failures"] = summary.failures;
	s["skipped"] = summary.skipped;
	auto &per = s["experiments"] = nlohmann::ordered_json::object();
	for (const auto &[name, agg] : summary.per_experiment)
	{
		nlohmann::ordered_json a;
		a["trials"] = agg.trials;
		a["failures"] = agg.failures;
		a["ratios"] = agg.ratios;
		if (agg.ratios)
		{
			a["min_ratio"] = agg.min_ratio;
			a["max_ratio"] = agg.max_ratio;
		}
		per[name] = std::move(a);
	}
	out << doc.dump(2) << '\n';
}

} // namespace valring
