#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperquot/errors.hpp"
#include "hyperquot/json_io.hpp"
#include "hyperquot/kernels.hpp"
#include "hyperquot/metric.hpp"
#include "hyperquot/verifier.hpp"

namespace {

using hyperquot::Json;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hyperquot::InvalidInput("cannot open output file: " + path);
    out << text;
}

std::string nbhd_string(const hyperquot::Topology& t, int x) {
    std::string s;
    hyperquot::for_each_bit(t.nbhd(x), [&](int i) { s += std::to_string(i); });
    return s;
}

int run_enumerate(int n, const std::string& format, const std::string& out_path) {
    const std::vector<hyperquot::Topology> all = hyperquot::enumerate_topologies(n);
    std::string text;
    if (format == "json") {
        Json j;
        j["n"] = n;
        j["count"] = all.size();
        Json rows = Json::array();
        for (std::size_t id = 0; id < all.size(); ++id) {
            const hyperquot::SeparationFlags sep = hyperquot::separation_axioms(all[id]);
            Json row = hyperquot::topology_to_json(all[id]);
            row["id"] = id;
            row["t0"] = sep.t0;
            row["t1"] = sep.t1;
            rows.push_back(std::move(row));
        }
        j["topologies"] = std::move(rows);
        text = j.dump(2) + "\n";
    } else if (format == "csv") {
        text = "id,num_opens,t0,t1,min_nbhd\n";
        for (std::size_t id = 0; id < all.size(); ++id) {
            const hyperquot::SeparationFlags sep = hyperquot::separation_axioms(all[id]);
            std::string nbhds;
            for (int x = 0; x < n; ++x) {
                if (x) nbhds += '-';
                nbhds += nbhd_string(all[id], x);
            }
            text += std::to_string(id) + "," + std::to_string(all[id].opens().size()) +
                    "," + (sep.t0 ? "1" : "0") + "," + (sep.t1 ? "1" : "0") + "," +
                    nbhds + "\n";
        }
    } else if (format == "pretty") {
        text = std::to_string(all.size()) + " topologies on " + std::to_string(n) +
               " point" + (n == 1 ? "" : "s") + "\n";
        for (std::size_t id = 0; id < all.size(); ++id) {
            const hyperquot::SeparationFlags sep = hyperquot::separation_axioms(all[id]);
            text += "id " + std::to_string(id) + ": min_nbhd =";
            for (int x = 0; x < n; ++x) text += " {" + nbhd_string(all[id], x) + "}";
            text += "; opens = " + std::to_string(all[id].opens().size());
            text += sep.t1 ? "; t1" : (sep.t0 ? "; t0" : "; not t0");
            text += "\n";
        }
    } else {
        throw hyperquot::InvalidInput("unknown format: " + format);
    }
    write_output(out_path, text);
    return 0;
}

int run_verify(const hyperquot::SuiteConfig& cfg, const std::string& out_path) {
    const hyperquot::Report report = hyperquot::run_suite(cfg);
    write_output(out_path, hyperquot::report_to_json(report).dump(2) + "\n");
    return hyperquot::report_exit_code(report);
}

int run_hausdorff(const std::string& metric_path, const std::vector<int>& a,
                  const std::vector<int>& b) {
    const hyperquot::FiniteMetricSpace m =
        hyperquot::metric_from_json(hyperquot::load_json_file(metric_path));
    hyperquot::Mask ma = 0, mb = 0;
    for (int i : a) {
        if (i < 0 || i >= m.size())
            throw hyperquot::InvalidInput("hausdorff: point index out of range");
        ma |= hyperquot::bit(i);
    }
    for (int i : b) {
        if (i < 0 || i >= m.size())
            throw hyperquot::InvalidInput("hausdorff: point index out of range");
        mb |= hyperquot::bit(i);
    }
    const std::array<double, 4> values = hyperquot::hausdorff_all(m, ma, mb);
    static const char* names[] = {"maxsup", "inf_radius", "sup_union", "sup_all"};
    Json j;
    for (int i = 0; i < 4; ++i) j[names[i]] = values[static_cast<std::size_t>(i)];
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool agree = hi - lo <= hyperquot::kMetricTol;
    j["agree"] = agree;
    std::cout << j.dump(2) << "\n";
    return agree ? 0 : 1;
}

int run_hyper(const std::string& space_path, int y_size, const std::string& show,
              const std::string& out_path) {
    const hyperquot::FiniteSpace x =
        hyperquot::space_from_json(hyperquot::load_json_file(space_path));
    const hyperquot::InstanceContext c =
        hyperquot::make_instance_context(x, y_size, true, {}, -1);
    Json j;
    j["space"] = hyperquot::space_to_json(x);
    j["y_size"] = y_size;
    if (show == "carrier" || show == "all") {
        Json carrier = Json::array();
        for (hyperquot::Mask s : c.fam.carrier)
            carrier.push_back(hyperquot::mask_to_json(s));
        j["carrier"] = std::move(carrier);
    }
    if (show == "vietoris" || show == "all") {
        j["vietoris"] = {{"lower", hyperquot::topology_to_json(c.viet.lower)},
                         {"upper", hyperquot::topology_to_json(c.viet.upper)},
                         {"full", hyperquot::topology_to_json(c.viet.full)}};
    }
    if (show == "quotients" || show == "all") {
        j["quotients"] = {
            {"q_full", c.fam.q_full},
            {"finitely_q_stable", c.fam.finitely_q_stable},
            {"image", c.tau_pq.image},
            {"tau_pq", hyperquot::topology_to_json(c.tau_pq.topology)},
            {"tau_sq", hyperquot::topology_to_json(c.tau_sq.topology)}};
    }
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite hyperspace and quotient topology toolkit"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate = app.add_subcommand(
        "enumerate", "enumerate the topologies on an n-point set");
    int enum_n = 3;
    std::string enum_format = "pretty";
    std::string enum_out;
    enumerate->add_option("-n,--points", enum_n, "carrier size (1..4)")
        ->check(CLI::Range(1, 4));
    enumerate->add_option("--format", enum_format, "json, csv, or pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    enumerate->add_option("-o,--output", enum_out, "output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand(
        "verify", "run the theorem checks over the instance grid");
    hyperquot::SuiteConfig cfg;
    std::string verify_out;
    std::vector<std::string> family_paths;
    bool no_probes = false;
    verify->add_option("--max-x", cfg.max_x, "largest carrier size (1..5)");
    verify->add_option("--max-y", cfg.max_y, "largest index-set size (1..3)");
    verify->add_option("--seed", cfg.seed, "seed for all sampled checks");
    verify->add_flag("--timing", cfg.timing, "record per-check milliseconds");
    verify->add_flag("--sample-x5", cfg.sample_x5,
                     "include sampled 5-point spaces (needs --max-x 5)");
    verify->add_option("--sample-x5-count", cfg.sample_x5_count,
                       "how many 5-point spaces to sample");
    verify->add_option("--qlift-samples", cfg.qlift_samples,
                       "random lift candidates per instance");
    verify->add_option("--pointwise-samples", cfg.pointwise_samples,
                       "random sequences per instance");
    verify->add_flag("--no-probes", no_probes,
                     "skip the canonical non-full probe families");
    verify->add_option("--explicit-f", family_paths,
                       "JSON file with a family (or an array of families)");
    verify->add_option("-o,--output", verify_out, "report path (default stdout)");
    verify->add_flag("--inject-fault", cfg.inject_fault, "")->group("");

    // hausdorff
    auto* hausdorff = app.add_subcommand(
        "hausdorff", "Hausdorff distance between two point sets, all variants");
    std::string metric_path;
    std::vector<int> set_a, set_b;
    hausdorff->add_option("-m,--metric", metric_path, "metric space JSON file")
        ->required();
    hausdorff->add_option("-a", set_a, "first point set, comma-separated indices")
        ->required()
        ->delimiter(',');
    hausdorff->add_option("-b", set_b, "second point set, comma-separated indices")
        ->required()
        ->delimiter(',');

    // hyper
    auto* hyper = app.add_subcommand(
        "hyper", "hyperspace carrier, Vietoris topologies, and quotients");
    std::string space_path, show = "all", hyper_out;
    int hyper_y = 2;
    hyper->add_option("-s,--space", space_path, "space JSON file")->required();
    hyper->add_option("-y", hyper_y, "index-set size");
    hyper->add_option("--show", show, "carrier, vietoris, quotients, or all")
        ->check(CLI::IsMember({"carrier", "vietoris", "quotients", "all"}));
    hyper->add_option("-o,--output", hyper_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*enumerate) return run_enumerate(enum_n, enum_format, enum_out);
        if (*verify) {
            cfg.explicit_probes = !no_probes;
            for (const std::string& path : family_paths)
                cfg.explicit_families.push_back(hyperquot::load_json_file(path));
            return run_verify(cfg, verify_out);
        }
        if (*hausdorff) return run_hausdorff(metric_path, set_a, set_b);
        if (*hyper) return run_hyper(space_path, hyper_y, show, hyper_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
