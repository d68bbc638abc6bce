// dmh: experiment and utility front end for the weighted minhash library.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "dmh/experiment.hpp"
#include "dmh/icws.hpp"
#include "dmh/lsh_index.hpp"
#include "dmh/serialize.hpp"
#include "dmh/sketch.hpp"
#include "dmh/synthetic.hpp"

namespace {

using namespace dmh;

struct Common {
    std::uint32_t k = 256;
    std::size_t l0 = 256;
    double l1 = 1.0;
    std::size_t pairs = 100;
    double target_j = 0.5;
    std::uint64_t seed = 1;
    std::string algo = "dartminhash";
    std::string out;  // empty: stdout
};

class Output {
public:
    Output(const std::string& path, bool binary) {
        if (path.empty() || path == "-") {
            stream_ = &std::cout;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
        if (!*file_) throw std::runtime_error(path + ": cannot open for writing");
        stream_ = file_.get();
        path_ = path;
    }
    std::ostream& get() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) throw std::runtime_error((path_.empty() ? std::string("stdout") : path_) + ": write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
    std::string path_;
};

std::vector<WeightedSet> load_sets(const std::string& path) {
    if (path.empty() || path == "-") return read_sets(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    try {
        return read_sets(in);
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

ExperimentConfig to_config(const Common& c) {
    ExperimentConfig config;
    config.algorithm = parse_algorithm(c.algo);
    config.k = c.k;
    config.l0 = c.l0;
    config.l1 = c.l1;
    config.pairs = c.pairs;
    config.target_j = c.target_j;
    config.seed = c.seed;
    config.validate();
    return config;
}

void run_estimate(const Common& c) {
    const auto config = to_config(c);
    const auto rows = run_estimation_experiment(config);
    Output out(c.out, false);
    write_estimation_csv(out.get(), config, rows);
    out.finish();

    std::size_t inside = 0;
    double sum = 0.0;
    for (const auto& r : rows) {
        inside += r.in_ci ? 1 : 0;
        sum += r.estimate;
    }
    std::fprintf(stderr, "%s k=%u J=%g: mean estimate %.4f, %zu/%zu inside the 95%% interval\n", c.algo.c_str(), c.k,
                 c.target_j, sum / static_cast<double>(rows.size()), inside, rows.size());
}

struct TimingArgs {
    bool grid = false;
    std::vector<std::string> algos;
    std::size_t sets = 100;
    std::size_t repetitions = 5;
    std::size_t warmup = 3;
};

void run_timing(const Common& c, const TimingArgs& t) {
    TimingOptions options;
    options.sets = t.sets;
    options.repetitions = t.repetitions;
    options.warmup = t.warmup;
    options.seed = c.seed;

    std::vector<Algorithm> algos;
    for (const auto& name : t.algos) algos.push_back(parse_algorithm(name));
    if (algos.empty()) algos.push_back(parse_algorithm(c.algo));

    std::vector<TimingCell> cells;
    if (t.grid) {
        cells = standard_timing_grid(algos);
    } else {
        for (auto a : algos) cells.push_back({a, c.k, c.l0, c.l1});
    }
    const auto rows = run_timing_experiment(cells, options);
    Output out(c.out, false);
    write_timing_csv(out.get(), options, rows);
    out.finish();
}

struct SketchArgs {
    std::string input;
    std::string format = "csv";
    bool one_bit = false;
};

void run_sketch(const Common& c, const SketchArgs& s) {
    const auto algo = parse_algorithm(c.algo);
    const auto sets = load_sets(s.input);
    const HashFamily hashes(c.seed);

    if (s.format == "binary") {
        if (algo != Algorithm::dartminhash) {
            throw validation_error("binary output is only defined for dartminhash sketches");
        }
        Output out(c.out, true);
        const DartMinHash sketcher(hashes, c.k);
        for (const auto& x : sets) {
            const auto sketch = sketcher(x);
            if (s.one_bit) {
                write_sketch(out.get(), one_bit(sketch));
            } else {
                write_sketch(out.get(), sketch);
            }
        }
        out.finish();
        return;
    }
    if (s.one_bit && algo != Algorithm::dartminhash) {
        throw validation_error("--one-bit needs --algo dartminhash");
    }

    Output out(c.out, false);
    auto& os = out.get();
    os << "# seed=" << c.seed << " algo=" << c.algo << " k=" << c.k << '\n';
    os << "set,j,value\n";
    char buf[96];
    for (std::size_t n = 0; n < sets.size(); ++n) {
        switch (algo) {
        case Algorithm::dartminhash: {
            const auto sketch = dart_minhash(hashes, sets[n], c.k);
            const auto bits = one_bit(sketch);
            for (std::size_t j = 0; j < sketch.k(); ++j) {
                if (s.one_bit) {
                    std::snprintf(buf, sizeof buf, "%zu,%zu,%d\n", n, j, bits.bit(j) ? 1 : 0);
                } else {
                    std::snprintf(buf, sizeof buf, "%zu,%zu,%016llx\n", n, j,
                                  static_cast<unsigned long long>(sketch.values[j]));
                }
                os << buf;
            }
            break;
        }
        case Algorithm::bottomk: {
            const auto sketch = bottom_k(hashes, sets[n], c.k);
            for (std::size_t j = 0; j < sketch.darts.size(); ++j) {
                std::snprintf(buf, sizeof buf, "%zu,%zu,%016llx\n", n, j,
                              static_cast<unsigned long long>(sketch.darts[j].fingerprint));
                os << buf;
            }
            break;
        }
        case Algorithm::icws:
        case Algorithm::icws_fast: {
            const IcwsSketcher sketcher(hashes, c.k);
            const auto values = algo == Algorithm::icws ? sketcher.sketch(sets[n]) : sketcher.sketch_fast(sets[n]);
            for (std::size_t j = 0; j < values.size(); ++j) {
                std::snprintf(buf, sizeof buf, "%zu,%zu,%llu:%lld\n", n, j,
                              static_cast<unsigned long long>(values[j].element),
                              static_cast<long long>(values[j].tick));
                os << buf;
            }
            break;
        }
        }
    }
    out.finish();
}

struct LshArgs {
    std::uint32_t tables = 16;
    std::uint32_t per_key = 4;
    double j1 = 0.5;
    std::size_t points = 1000;
    std::size_t queries = 10;
    std::string data;
    std::string query_file;
};

void run_lsh_demo(const Common& c, const LshArgs& a) {
    const LshParams params{a.tables, a.per_key, a.j1};
    LshIndex index(params, c.seed);

    std::vector<WeightedSet> points;
    std::vector<WeightedSet> queries;
    if (!a.data.empty()) {
        points = load_sets(a.data);
    } else {
        for (std::size_t i = 0; i < a.points; ++i) points.push_back(gen_set(c.l0, c.l1, derive_seed(c.seed, 1, i)));
    }
    if (!a.query_file.empty()) {
        queries = load_sets(a.query_file);
    } else {
        // each synthetic query has a planted neighbour at the target similarity
        for (std::size_t i = 0; i < a.queries && i < points.size(); ++i) {
            queries.push_back(gen_pair(points[i], c.target_j, derive_seed(c.seed, 2, i)));
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].empty()) index.insert(i, points[i]);
    }

    Output out(c.out, false);
    auto& os = out.get();
    os << "# seed=" << c.seed << " L=" << a.tables << " K=" << a.per_key << " j1=" << a.j1 << '\n';
    os << "query,id,similarity\n";
    char buf[96];
    for (std::size_t q = 0; q < queries.size(); ++q) {
        if (queries[q].empty()) continue;
        for (const auto& cand : index.query(queries[q])) {
            std::snprintf(buf, sizeof buf, "%zu,%llu,%.17g\n", q, static_cast<unsigned long long>(cand.id),
                          cand.similarity);
            os << buf;
        }
    }
    out.finish();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted minhash sketches, estimation trials, timing grids and an LSH demo"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--k", common.k, "hash values per sketch")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--l0", common.l0, "elements per synthetic set")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--l1", common.l1, "total weight of a synthetic set")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--pairs", common.pairs, "estimation trials")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--target-j", common.target_j, "weighted Jaccard similarity of synthetic pairs")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--seed", common.seed, "master seed")->capture_default_str();
    app.add_option("--algo", common.algo, "dartminhash | icws | icws-fast | bottomk")
        ->capture_default_str()
        ->check(CLI::IsMember({"dartminhash", "icws", "icws-fast", "bottomk"}));
    app.add_option("--out", common.out, "output file (default stdout)");

    auto* estimate = app.add_subcommand("estimate", "estimation-accuracy trials on synthetic pairs, CSV out");

    TimingArgs timing_args;
    auto* timing = app.add_subcommand("timing", "sketching time per set, CSV out");
    timing->add_flag("--grid", timing_args.grid, "run the standard 15-shape k/l0/l1 grid");
    timing->add_option("--algos", timing_args.algos, "algorithms to time (default: --algo)")
        ->check(CLI::IsMember({"dartminhash", "icws", "icws-fast", "bottomk"}));
    timing->add_option("--sets", timing_args.sets, "sets per cell")->capture_default_str();
    timing->add_option("--repetitions", timing_args.repetitions, "timed passes per cell")->capture_default_str();
    timing->add_option("--warmup", timing_args.warmup, "untimed sketches per cell")->capture_default_str();

    SketchArgs sketch_args;
    auto* sketch = app.add_subcommand("sketch", "sketch sets read in id:weight text form");
    sketch->add_option("--in", sketch_args.input, "input file (default stdin)");
    sketch->add_option("--format", sketch_args.format, "csv | binary")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "binary"}));
    sketch->add_flag("--one-bit", sketch_args.one_bit, "keep one bit per hash value");

    LshArgs lsh_args;
    auto* lsh = app.add_subcommand("lsh-demo", "build an LSH index and report query candidates as CSV");
    lsh->add_option("--L", lsh_args.tables, "tables")->capture_default_str()->check(CLI::PositiveNumber);
    lsh->add_option("--K", lsh_args.per_key, "hash values per key")->capture_default_str()->check(CLI::PositiveNumber);
    lsh->add_option("--j1", lsh_args.j1, "class probing threshold")->capture_default_str();
    lsh->add_option("--points", lsh_args.points, "synthetic points to index")->capture_default_str();
    lsh->add_option("--queries", lsh_args.queries, "synthetic queries")->capture_default_str();
    lsh->add_option("--data", lsh_args.data, "index sets from this file instead");
    lsh->add_option("--query-file", lsh_args.query_file, "query sets from this file instead");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*estimate) run_estimate(common);
        if (*timing) run_timing(common, timing_args);
        if (*sketch) run_sketch(common, sketch_args);
        if (*lsh) run_lsh_demo(common, lsh_args);
    } catch (const std::exception& e) {
        std::cerr << "dmh: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
