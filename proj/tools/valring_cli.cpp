// valring: command-line front end for the finite valuation ring experiments.
//
// Exit status: 0 when every record passes, 1 when some inequality failed,
// 2 on usage or configuration errors.

#include "valring/error.hpp"
#include "valring/experiment.hpp"
#include "valring/graph.hpp"
#include "valring/kernels.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace valring;

namespace {

struct Options
{
	std::string ring = "Z/2^2";
	unsigned d = 4;
	std::uint64_t trials = 100;
	std::uint64_t seed = 42;
	std::size_t points = 0, planes = 0, lines = 0, size = 0;
	std::string sizes;
	std::string solver = "auto";
	std::string config_path;
	std::string out;
	std::string format;
	int threads = 0;
	std::optional<std::uint64_t> run_seed, run_trials;
};

int emit(const std::string &path, const std::function<void(std::ostream &)> &write)
{
	if (path.empty())
	{
		write(std::cout);
		return 0;
	}
	std::ofstream f(path, std::ios::binary);
	if (!f)
		throw ConfigError("cannot write '" + path + "'");
	write(f);
	return 0;
}

int status_of(std::span<const TrialRecord> records)
{
	for (const auto &r : records)
		if (!r.pass)
			return 1;
	return 0;
}

ExperimentConfig base_config(const Options &o)
{
	ExperimentConfig c;
	c.rings = {o.ring};
	c.trials = o.trials;
	c.seed = o.seed;
	c.solver = o.solver;
	c.threads = o.threads;
	c.validate();
	return c;
}

RingPtr ring_of(const Options &o)
{
	try
	{
		return Ring::parse(o.ring);
	}
	catch (const Error &e)
	{
		throw ConfigError(e.what());
	}
}

int cmd_ring_info(const Options &o)
{
	const auto ring = ring_of(o);
	nlohmann::ordered_json j;
	j["spec"] = ring->spec_string();
	j["family"] = ring->family() == RingFamily::ZPowerR ? "ZPowerR" : "TruncatedPoly";
	j["p"] = ring->p();
	j["m"] = ring->m();
	j["q"] = ring->q();
	j["r"] = ring->r();
	j["order"] = ring->order();
	j["units"] = ring->unit_count();
	j["nonunits"] = ring->nonunit_count();
	j["uniformizer"] = ring->format(ring->uniformizer());
	std::cout << j.dump(2) << '\n';
	return 0;
}

int cmd_graph_spectrum(const Options &o)
{
	const auto ring = ring_of(o);
	kernels::set_thread_count(o.threads);
	const auto g = build_graph(ring, o.d);
	const auto rep = spectrum(g, parse_backend(o.solver));
	nlohmann::ordered_json j;
	j["ring"] = ring->spec_string();
	j["d"] = o.d;
	j["part_size"] = rep.part_size;
	j["degree"] = rep.degree;
	j["singular_values"] = rep.singular_values;
	j["lambda3"] = rep.lambda3;
	j["bound"] = rep.bound;
	j["pass"] = rep.pass;
	j["solver"] = backend_name(rep.backend);
	j["solver_tolerance"] = rep.solver_tolerance;
	j["iterations"] = rep.iterations;
	emit(o.out, [&](std::ostream &s) { s << j.dump(2) << '\n'; });
	return rep.pass ? 0 : 1;
}

int detail(const Options &o, const std::vector<TrialRecord> &records)
{
	emit(o.out, [&](std::ostream &s) { write_detail_csv(s, records); });
	return status_of(records);
}

std::array<std::size_t, 3> parse_sizes(const std::string &text)
{
	std::array<std::size_t, 3> out{0, 0, 0};
	if (text.empty())
		return out;
	ExperimentConfig tmp;
	tmp.set("sizes", text);
	return tmp.sizes;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Sum-product and incidence experiments over finite valuation rings"};
	app.require_subcommand(1);
	Options o;

	auto add_ring = [&](CLI::App *cmd) { cmd->add_option("--ring", o.ring, "ring spec, e.g. Z/2^3 or GF(3)[t]/t^2"); };
	auto add_trials = [&](CLI::App *cmd) {
		cmd->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
		cmd->add_option("--seed", o.seed, "master seed");
		cmd->add_option("--out", o.out, "output file (default stdout)");
		cmd->add_option("--threads", o.threads, "worker threads");
	};

	auto *ring_cmd = app.add_subcommand("ring", "ring structure queries")->require_subcommand(1);
	auto *ring_info = ring_cmd->add_subcommand("info", "print ring parameters as JSON");
	add_ring(ring_info);

	auto *graph_cmd = app.add_subcommand("graph", "Erdos-Renyi graph E_{q,d}(R)")->require_subcommand(1);
	auto *graph_spec = graph_cmd->add_subcommand("spectrum", "singular values and the lambda3 bound as JSON");
	add_ring(graph_spec);
	graph_spec->add_option("-d,--dim", o.d, "dimension d");
	graph_spec->add_option("--solver", o.solver, "auto | eigen | jacobi");
	graph_spec->add_option("--out", o.out, "output file (default stdout)");
	graph_spec->add_option("--threads", o.threads, "worker threads");
	auto *graph_mix = graph_cmd->add_subcommand("mix", "expander mixing trials as CSV");
	add_ring(graph_mix);
	graph_mix->add_option("-d,--dim", o.d, "dimension d");
	graph_mix->add_option("--solver", o.solver, "auto | eigen | jacobi");
	add_trials(graph_mix);

	auto *inc_cmd = app.add_subcommand("incidence", "point-plane incidences in R^3")->require_subcommand(1);
	auto *inc_check = inc_cmd->add_subcommand("check", "random incidence trials as CSV");
	add_ring(inc_check);
	inc_check->add_option("--points", o.points, "|Q| per trial (0: random)");
	inc_check->add_option("--planes", o.planes, "|Pi| per trial (0: random)");
	add_trials(inc_check);

	auto *sp_cmd = app.add_subcommand("sumprod", "energy and sum-product checks")->require_subcommand(1);
	auto *sp_energy = sp_cmd->add_subcommand("energy", "collision energy trials");
	add_ring(sp_energy);
	sp_energy->add_option("--lines", o.lines, "|P| per trial (0: random)");
	sp_energy->add_option("--size", o.size, "|A| per trial (0: random)");
	add_trials(sp_energy);
	auto *sp_thm1 = sp_cmd->add_subcommand("thm1", "|BA+C| lower bound trials");
	add_ring(sp_thm1);
	sp_thm1->add_option("--sizes", o.sizes, "a,b,c (0 entries: random)");
	add_trials(sp_thm1);
	auto *sp_thm2 = sp_cmd->add_subcommand("thm2", "square-sum energy chain trials");
	add_ring(sp_thm2);
	sp_thm2->add_option("--size", o.size, "|A| per trial (0: random)");
	add_trials(sp_thm2);
	auto *sp_plun = sp_cmd->add_subcommand("plunnecke", "Plunnecke-Ruzsa witness search trials");
	add_ring(sp_plun);
	sp_plun->add_option("--size", o.size, "upper bound on |A| and |B|");
	add_trials(sp_plun);

	auto *run_cmd = app.add_subcommand("run", "run a configured experiment grid");
	run_cmd->add_option("--config", o.config_path, "key = value config file")->required();
	run_cmd->add_option("--seed", o.run_seed, "override master seed");
	run_cmd->add_option("--trials", o.run_trials, "override trial count");
	run_cmd->add_option("--out", o.out, "override output file");
	run_cmd->add_option("--format", o.format, "override output format (csv | json)");
	run_cmd->add_option("--threads", o.threads, "override worker count");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		const int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	try
	{
		if (ring_info->parsed())
			return cmd_ring_info(o);
		if (graph_spec->parsed())
			return cmd_graph_spectrum(o);
		if (graph_mix->parsed())
		{
			const auto c = base_config(o);
			kernels::set_thread_count(resolve_threads(c));
			return detail(o, run_mixing(ring_of(o), o.d, c));
		}
		if (inc_check->parsed())
		{
			auto c = base_config(o);
			c.points = o.points;
			c.planes = o.planes;
			kernels::set_thread_count(resolve_threads(c));
			return detail(o, run_incidence(ring_of(o), c));
		}
		if (sp_energy->parsed())
		{
			auto c = base_config(o);
			c.lines = o.lines;
			c.set_size = o.size;
			return detail(o, run_energy(ring_of(o), c));
		}
		if (sp_thm1->parsed())
		{
			auto c = base_config(o);
			c.sizes = parse_sizes(o.sizes);
			return detail(o, run_thm1(ring_of(o), c));
		}
		if (sp_thm2->parsed())
		{
			auto c = base_config(o);
			c.thm2_size = o.size;
			return detail(o, run_thm2(ring_of(o), c));
		}
		if (sp_plun->parsed())
		{
			auto c = base_config(o);
			if (o.size)
				c.plunnecke_size = o.size;
			return detail(o, run_plunnecke(ring_of(o), c));
		}
		if (run_cmd->parsed())
		{
			auto c = load_config(o.config_path);
			if (o.run_seed)
				c.seed = *o.run_seed;
			if (o.run_trials)
				c.trials = *o.run_trials;
			if (!o.out.empty())
				c.output = o.out;
			if (!o.format.empty())
				c.format = o.format;
			if (o.threads)
				c.threads = o.threads;
			c.validate();
			const auto result = run(c);
			emit(c.output, [&](std::ostream &s) {
				if (c.format == "json")
					write_json(s, result.records, result.summary);
				else
					write_csv(s, result.records);
			});
			std::cerr << "trials: " << result.summary.total << ", failures: " << result.summary.failures << '\n';
			for (const auto &[name, agg] : result.summary.per_experiment)
			{
				std::cerr << "  " << name << ": " << agg.trials << " trials, " << agg.failures << " failed";
				if (agg.ratios)
					std::cerr << ", ratio in [" << format_double(agg.min_ratio) << ", "
					          << format_double(agg.max_ratio) << "] over " << agg.ratios;
				std::cerr << '\n';
			}
			for (const auto &s : result.summary.skipped)
				std::cerr << "  skipped (over cap): " << s << '\n';
			if (result.summary.failures)
			{
				for (const auto &r : result.records)
					if (!r.pass)
						std::cerr << "FAIL " << r.experiment << ' ' << r.ring << " trial " << r.trial << ' ' << r.inputs
						          << '\n';
				return 1;
			}
			return 0;
		}
	}
	catch (const ConfigError &e)
	{
		std::cerr << "config error: " << e.what() << '\n';
		return 2;
	}
	catch (const ParseError &e)
	{
		std::cerr << "parse error: " << e.what() << '\n';
		return 2;
	}
	catch (const Error &e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	return 2;
}
