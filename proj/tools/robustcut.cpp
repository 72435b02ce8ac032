#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "checks.hpp"
#include "robustcut/errors.hpp"
#include "robustcut/exact_empirical.hpp"
#include "robustcut/functionals.hpp"
#include "robustcut/graphcut.hpp"
#include "robustcut/instances.hpp"
#include "robustcut/io.hpp"
#include "robustcut/morphology.hpp"
#include "robustcut/records.hpp"

namespace rc = robustcut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Common {
    double epsilon = 0.0;
    std::string metric = "2";
    int scale = 12;
    std::uint64_t seed = 1;
    std::string out;
};

void add_epsilon(CLI::App* cmd, Common& c, bool required = true) {
    auto* opt = cmd->add_option("--epsilon,-e", c.epsilon, "adversarial budget (>= 0)");
    if (required) opt->required();
}

void add_metric(CLI::App* cmd, Common& c) {
    cmd->add_option("--metric,-m", c.metric, "l_p exponent: 1, 2, inf or any real >= 1")->capture_default_str();
}

void add_scale(CLI::App* cmd, Common& c) {
    cmd->add_option("--scale", c.scale, "capacity scaling exponent for non-rational weights")
        ->capture_default_str();
}

void add_out(CLI::App* cmd, Common& c, bool required) {
    auto* opt = cmd->add_option("--out,-o", c.out, "output prefix");
    if (required) opt->required();
}

rc::CutOptions cut_options(const Common& c) {
    rc::CutOptions o;
    o.scale_exponent = c.scale;
    return o;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rc::InputError("cannot write '" + path + "'");
    return out;
}

template <class Write>
void write_file(const std::string& path, Write write) {
    auto out = open_output(path);
    write(static_cast<std::ostream&>(out));
    if (!out) throw rc::InputError("write to '" + path + "' failed");
}

template <class T>
T report_warnings(rc::Loaded<T> loaded) {
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    return std::move(loaded.value);
}

// A grid file opens (after comments) with a "dims" line; anything else is
// read as a dataset CSV.
bool looks_like_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rc::ParseError("cannot open '" + path + "'", 0);
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return line.compare(first, 4, "dims") == 0;
    }
    return false;
}

int cmd_solve_empirical(const std::string& path, const Common& c) {
    const auto ds = report_warnings(rc::load_dataset(path));
    const auto metric = rc::Metric::parse(c.metric);
    const auto opt = rc::optimal_risk(ds, c.epsilon, metric);
    const auto cls = rc::build_classifier(ds, opt.certificate, c.epsilon, metric);
    const auto record = rc::risk_breakdown_empirical(cls, ds, c.epsilon);
    if (std::abs(record.adversarial_risk - opt.certificate.cover_value) > 1e-12)
        throw rc::InternalError("classifier risk " + rc::format_real(record.adversarial_risk) +
                                " does not match cover value " + rc::format_real(opt.certificate.cover_value));
    if (!c.out.empty()) {
        write_file(c.out + ".risk.txt", [&](std::ostream& o) { rc::write_record(o, record); });
        write_file(c.out + ".cert.txt", [&](std::ostream& o) { rc::write_certificate(o, opt.certificate); });
        write_file(c.out + ".classifier.txt", [&](std::ostream& o) { rc::write_classifier(o, cls); });
    }
    rc::write_record(std::cout, record);
    return kExitOk;
}

void write_cut_summary(std::ostream& o, const rc::CutSolution& sol) {
    o << "value=" << rc::format_real(sol.value) << '\n'
      << "flow_value=" << sol.flow_value << '\n'
      << "scale=" << rc::format_real(sol.scale) << '\n'
      << "exact=" << (sol.exact ? 1 : 0) << '\n'
      << "value_error_bound=" << rc::format_real(sol.value_error_bound) << '\n'
      << "mask_cells=" << sol.mask.count() << '\n'
      << "a_min_cells=" << sol.a_min.count() << '\n'
      << "a_max_cells=" << sol.a_max.count() << '\n';
}

int cmd_solve_grid(const std::string& path, const Common& c) {
    const auto gm = report_warnings(rc::load_grid(path));
    const auto st = rc::ball_stencil(gm.geometry(), c.epsilon, rc::Metric::parse(c.metric));
    const auto sol = rc::solve_grid(gm, st, cut_options(c));
    const auto record = rc::risk_breakdown_grid(sol.mask, gm, st);
    if (!c.out.empty()) {
        write_file(c.out + ".mask.pbm", [&](std::ostream& o) { rc::write_mask_pbm(o, sol.mask); });
        write_file(c.out + ".amin.pbm", [&](std::ostream& o) { rc::write_mask_pbm(o, sol.a_min); });
        write_file(c.out + ".amax.pbm", [&](std::ostream& o) { rc::write_mask_pbm(o, sol.a_max); });
        write_file(c.out + ".risk.txt", [&](std::ostream& o) { rc::write_record(o, record); });
        write_file(c.out + ".cut.txt", [&](std::ostream& o) { write_cut_summary(o, sol); });
    }
    rc::write_record(std::cout, record);
    return kExitOk;
}

int cmd_morph(const std::string& grid_path, const std::string& mask_path, const std::string& op,
              const Common& c) {
    const auto gm = report_warnings(rc::load_grid(grid_path));
    const auto mask = rc::load_mask(mask_path, gm.geometry());
    const auto st = rc::ball_stencil(gm.geometry(), c.epsilon, rc::Metric::parse(c.metric));
    rc::CellMask result;
    if (op == "dilate") result = rc::dilate(mask, st);
    else if (op == "erode") result = rc::erode(mask, st);
    else if (op == "open") result = rc::opening(mask, st);
    else result = rc::closing(mask, st);
    const auto record = rc::risk_breakdown_grid(result, gm, st);
    if (!c.out.empty()) {
        write_file(c.out + ".mask.pbm", [&](std::ostream& o) { rc::write_mask_pbm(o, result); });
        write_file(c.out + ".risk.txt", [&](std::ostream& o) { rc::write_record(o, record); });
    }
    rc::write_record(std::cout, record);
    return kExitOk;
}

void write_gnuplot(std::ostream& o, const std::string& csv, const std::string& column) {
    o << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'epsilon'\n"
      << "set ylabel 'optimal adversarial risk'\n"
      << "plot '" << csv << "' using 1:" << column << " with steps linewidth 2\n";
}

int cmd_sweep(const std::string& path, const std::vector<double>& eps_list, const std::string& plot,
              const Common& c) {
    const auto metric = rc::Metric::parse(c.metric);
    std::ostringstream csv;
    if (looks_like_grid(path)) {
        const auto gm = report_warnings(rc::load_grid(path));
        const auto rows = rc::sweep_grid(gm, eps_list, metric, cut_options(c));
        rc::write_grid_sweep(csv, rows);
    } else {
        const auto ds = report_warnings(rc::load_dataset(path));
        rc::write_path_report(csv, rc::sweep_epsilon(ds, eps_list, metric));
    }
    if (!c.out.empty()) {
        write_file(c.out + ".csv", [&](std::ostream& o) { o << csv.str(); });
        if (!plot.empty()) {
            const auto name = std::filesystem::path(c.out + ".csv").filename().string();
            write_file(plot, [&](std::ostream& o) { write_gnuplot(o, name, "2"); });
        }
    } else if (!plot.empty()) {
        throw rc::InputError("--plot needs --out");
    }
    std::cout << csv.str();
    return kExitOk;
}

struct GenParams {
    std::string kind;
    std::size_t cells = 32;
    std::size_t n = 200;
    double spread = 0.5;
};

int cmd_gen(const GenParams& p, const Common& c) {
    std::ostringstream text;
    std::string ext;
    if (p.kind == "four-squares") {
        rc::write_grid(text, rc::four_squares(p.cells));
        ext = ".grid";
    } else {
        const auto ds = p.kind == "two-deltas" ? rc::two_deltas() : rc::two_clusters(p.n, c.seed, p.spread);
        rc::write_dataset(text, ds);
        ext = ".csv";
    }
    if (c.out.empty()) std::cout << text.str();
    else write_file(c.out + ext, [&](std::ostream& o) { o << text.str(); });
    return kExitOk;
}

int cmd_check(const std::string& path, const Common& c) {
    const auto metric = rc::Metric::parse(c.metric);
    rc::cli::CheckReport report;
    if (looks_like_grid(path)) {
        const auto gm = report_warnings(rc::load_grid(path));
        report = rc::cli::check_grid(gm, c.epsilon, metric, c.seed, cut_options(c));
    } else {
        const auto ds = report_warnings(rc::load_dataset(path));
        report = rc::cli::check_dataset(ds, c.epsilon, metric, c.seed);
    }
    report.print(std::cout);
    return report.all_passed() ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal adversarially robust binary classifiers via vertex cover and min-cut"};
    app.require_subcommand(1);
    std::function<int()> action;
    Common c;
    std::string input, mask_path, op, plot;
    std::vector<double> eps_list;
    GenParams gen;

    auto* se = app.add_subcommand("solve-empirical", "optimal classifier for an empirical dataset CSV");
    se->add_option("dataset", input, "CSV rows x1,...,xd,label[,mass]")->required();
    add_epsilon(se, c);
    add_metric(se, c);
    add_out(se, c, false);
    se->callback([&] { action = [&] { return cmd_solve_empirical(input, c); }; });

    auto* sg = app.add_subcommand("solve-grid", "minimum cut on a gridded measure");
    sg->add_option("grid", input, "grid file")->required();
    add_epsilon(sg, c);
    add_metric(sg, c);
    add_scale(sg, c);
    add_out(sg, c, false);
    sg->callback([&] { action = [&] { return cmd_solve_grid(input, c); }; });

    auto* mo = app.add_subcommand("morph", "dilate, erode, open or close a mask");
    mo->add_option("grid", input, "grid file fixing geometry and measure")->required();
    mo->add_option("--mask", mask_path, "mask file (PBM P1 or 0/1 CSV)")->required();
    mo->add_option("--op", op, "operation")
        ->required()
        ->check(CLI::IsMember({"dilate", "erode", "open", "close"}));
    add_epsilon(mo, c);
    add_metric(mo, c);
    add_out(mo, c, false);
    mo->callback([&] { action = [&] { return cmd_morph(input, mask_path, op, c); }; });

    auto* sw = app.add_subcommand("sweep", "optimal risk along a list of budgets");
    sw->add_option("instance", input, "dataset CSV or grid file")->required();
    sw->add_option("--eps-list", eps_list, "ascending budgets, comma separated")->required()->delimiter(',');
    sw->add_option("--plot", plot, "also write a gnuplot script to this path");
    add_metric(sw, c);
    add_scale(sw, c);
    add_out(sw, c, false);
    sw->callback([&] { action = [&] { return cmd_sweep(input, eps_list, plot, c); }; });

    auto* ge = app.add_subcommand("gen", "write a canonical instance");
    ge->add_option("--case", gen.kind, "instance")
        ->required()
        ->check(CLI::IsMember({"two-deltas", "four-squares", "two-clusters"}));
    ge->add_option("--cells", gen.cells, "four-squares: cells per axis (even)")->capture_default_str();
    ge->add_option("--n", gen.n, "two-clusters: number of points")->capture_default_str();
    ge->add_option("--spread", gen.spread, "two-clusters: standard deviation")->capture_default_str();
    ge->add_option("--seed", c.seed, "two-clusters: generator seed")->capture_default_str();
    add_out(ge, c, false);
    ge->callback([&] { action = [&] { return cmd_gen(gen, c); }; });

    auto* ch = app.add_subcommand("check", "run the property suite on an instance");
    ch->add_option("instance", input, "dataset CSV or grid file")->required();
    add_epsilon(ch, c);
    add_metric(ch, c);
    add_scale(ch, c);
    ch->add_option("--seed", c.seed, "seed for randomized probes")->capture_default_str();
    ch->callback([&] { action = [&] { return cmd_check(input, c); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitInput;
    }

    try {
        return action();
    } catch (const rc::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const rc::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
