#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "softpress/errors.hpp"
#include "softpress/legendre.hpp"
#include "softpress/monomer_dimer.hpp"
#include "softpress/parallel.hpp"
#include "softpress/pressure1d.hpp"
#include "softpress/soft_core.hpp"
#include "softpress/transfer2d.hpp"

using namespace softpress;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    for (double v : parse_doubles(csv)) out.push_back(static_cast<int>(v));
    return out;
}

struct Output {
    std::optional<std::string> path;
    std::ofstream file;
    std::ostream& stream() {
        if (!path) return std::cout;
        if (!file.is_open()) {
            file.open(*path);
            if (!file) throw DomainError("cannot open output file: " + *path);
        }
        return file;
    }
};

int run_pressure1d(const std::string& digraph_path, const std::string& u_csv, int axis) {
    auto g = load_digraph(digraph_path);
    if (axis < 1 || axis > g.d) throw DomainError("axis index out of range");
    auto u = parse_doubles(u_csv);
    const Digraph& gamma = g.axis(axis - 1);
    double value = pressure_1d(gamma, u);
    std::cout << "pressure " << fmt(value) << "\n";
    if (value == -std::numeric_limits<double>::infinity()) return 0;
    try {
        auto rec = density_entropy_1d(gamma, u);
        std::cout << "gradient";
        for (double p : rec.p) std::cout << " " << fmt(p);
        std::cout << "\nentropy " << fmt(rec.h) << "\n";
    } catch (const Reducible&) {
        auto rec = component_density_entropy(gamma, u);
        std::cout << "gradient(component)";
        for (double p : rec.p) std::cout << " " << fmt(p);
        std::cout << "\nentropy(component) " << fmt(rec.h) << "\n";
        std::cout << "note reducible digraph; densities from the dominant component\n";
    }
    return 0;
}

int run_bounds2d(const std::string& digraph_path, const std::string& u_csv, int r, int p, int q,
                 int strip_m2) {
    auto g = load_digraph(digraph_path);
    auto u = parse_doubles(u_csv);
    auto est = sandwich_bounds(g, r, p, q, u);
    std::cout << "lower " << fmt(est.lower) << "\nupper " << fmt(est.upper) << "\nvalue "
              << fmt(est.value) << "\n";
    if (strip_m2 > 0)
        std::cout << "strip_upper(m2=" << strip_m2 << ") "
                  << fmt(strip_upper_bound(g, strip_m2, u)) << "\n";
    return 0;
}

int run_md_baxter(std::vector<double> s_invs, int m_upper, std::vector<int> m_lower, double t,
                  int density_m, bool paper_scale, Output& out) {
    if (s_invs.empty()) s_invs = md::baxter_s_inverses();
    auto& os = out.stream();
    os << "s_inv,v,lower,upper,p_total,entropy,m_upper,m_lo_hi,m_lo_lo,t\n";
    for (double s_inv : s_invs) {
        if (s_inv <= 0) throw DomainError("s_inv values must be positive");
        int mu = m_upper, mh, ml;
        if (paper_scale) {
            md::baxter_production_params(s_inv, mu, mh, ml);
        } else {
            if (m_lower.size() != 2) throw DomainError("--m-lower needs HI,LO");
            mh = m_lower[0];
            ml = m_lower[1];
        }
        auto row = md::baxter_row(1.0 / s_inv, mu, mh, ml, t);
        if (density_m > 0) {
            auto dens = md::dimer_densities_fd(density_m, {row.v, row.v}, t);
            row.p_total = dens.p1 + dens.p2;
            row.entropy = row.upper - row.p_total * row.v;
        }
        os << fmt(row.s_inv) << "," << fmt(row.v) << "," << fmt(row.lower) << ","
           << fmt(row.upper) << "," << fmt(row.p_total) << "," << fmt(row.entropy) << ","
           << row.m_upper << "," << row.m_lo_hi << "," << row.m_lo_lo << "," << fmt(row.t)
           << "\n";
    }
    return 0;
}

int run_md_surface(int grid, double lo, double hi, int m, double t, int threads, Output& out) {
    if (grid < 2) throw DomainError("grid needs at least 2 points per side");
    if (hi <= lo) throw DomainError("range needs lo < hi");
    std::vector<double> vs(static_cast<size_t>(grid));
    for (int i = 0; i < grid; ++i)
        vs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (grid - 1);

    struct Row {
        double v1, v2, pbar_m, p1, p2, h;
        bool done = false;
    };
    std::vector<Row> rows(static_cast<size_t>(grid) * grid);
    auto emit = [&](std::size_t upto) {
        auto& os = out.stream();
        os << "v1,v2,pbar_over_m,p1,p2,entropy,m,t\n";
        for (std::size_t i = 0; i < upto; ++i) {
            const auto& r = rows[i];
            os << fmt(r.v1) << "," << fmt(r.v2) << "," << fmt(r.pbar_m) << "," << fmt(r.p1)
               << "," << fmt(r.p2) << "," << fmt(r.h) << "," << m << "," << fmt(t) << "\n";
        }
    };
    // Grid points are independent; rows land in deterministic grid order no
    // matter the thread count.
    try {
        parallel_for(rows.size(), threads, [&](std::size_t idx) {
            double v1 = vs[idx / static_cast<size_t>(grid)];
            double v2 = vs[idx % static_cast<size_t>(grid)];
            auto rec = md::entropy_2d(m, {v1, v2}, t);
            rows[idx] = Row{v1, v2, md::pbar1_md(m, {v1, v2}) / m, rec.p1, rec.p2, rec.h, true};
        });
    } catch (...) {
        // Flush the completed prefix before reporting the failure.
        std::size_t upto = 0;
        while (upto < rows.size() && rows[upto].done) ++upto;
        emit(upto);
        throw;
    }
    emit(rows.size());
    return 0;
}

int run_conjugate(const std::string& digraph_path, const std::string& from_csv,
                  const std::string& to_csv, int steps, const std::string& p_list, int axis,
                  Output& out) {
    auto g = load_digraph(digraph_path);
    if (axis < 1 || axis > g.d) throw DomainError("axis index out of range");
    auto a = parse_doubles(from_csv);
    auto b = parse_doubles(to_csv);
    if (a.size() != b.size() || static_cast<int>(a.size()) != g.n)
        throw DomainError("segment endpoints must have one weight per color");
    if (steps < 2) throw DomainError("need at least 2 sample points");
    PressureSamples samples;
    samples.dim = g.n;
    samples.source = digraph_path;
    for (int i = 0; i < steps; ++i) {
        double s = static_cast<double>(i) / (steps - 1);
        WeightVector u(a.size());
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = a[j] + s * (b[j] - a[j]);
        samples.points.emplace_back(u, pressure_1d(g.axis(axis - 1), u));
    }
    auto& os = out.stream();
    os << "p,conjugate,entropy,argmax_u,bounded\n";
    std::stringstream plist(p_list);
    std::string spec;
    while (std::getline(plist, spec, ';')) {
        if (spec.empty()) continue;
        auto p = parse_doubles(spec);
        if (static_cast<int>(p.size()) != g.n)
            throw DomainError("each density vector needs one entry per color");
        auto res = conjugate_on_grid(samples, p);
        os << "\"";
        for (std::size_t j = 0; j < p.size(); ++j) os << (j ? " " : "") << fmt(p[j]);
        os << "\"," << fmt(res.value) << "," << fmt(-res.value) << ",\"";
        for (std::size_t j = 0; j < res.argmax_u.size(); ++j)
            os << (j ? " " : "") << fmt(res.argmax_u[j]);
        os << "\"," << (res.on_boundary ? "no" : "yes") << "\n";
    }
    return 0;
}

int run_scan(const std::string& digraph_path, const std::string& from_csv,
             const std::string& to_csv, int steps, double h, double gap_tol, int axis,
             Output& out) {
    auto g = load_digraph(digraph_path);
    if (axis < 1 || axis > g.d) throw DomainError("axis index out of range");
    auto a = parse_doubles(from_csv);
    auto b = parse_doubles(to_csv);
    ScanOptions opts;
    opts.steps = steps;
    opts.h = h;
    opts.gap_tol = gap_tol;
    const Digraph& gamma = g.axis(axis - 1);
    auto kinks = phase_transition_scan(
        [&](const WeightVector& u) { return pressure_1d(gamma, u); }, a, b, opts);
    out.stream() << kinks_to_json(kinks) << "\n";
    return 0;
}

int run_oracle(const std::string& digraph_path, const std::string& box_csv,
               const std::string& u_csv, const std::string& periodic_csv, long long budget) {
    auto g = load_digraph(digraph_path);
    BoxShape box{parse_ints(box_csv)};
    auto u = parse_doubles(u_csv);
    std::set<int> periodic;
    for (int axis : parse_ints(periodic_csv)) periodic.insert(axis - 1);
    EnumerateOptions opts;
    if (budget > 0) opts.node_budget = budget;
    if (static_cast<int>(u.size()) != g.n) throw DomainError("need one weight per color");
    long long count = 0;
    // Count and weighted sum in one pass through the same stream.
    double maxw = -std::numeric_limits<double>::infinity(), sum = 0.0;
    for_each_coloring(
        g, box, periodic,
        [&](const std::vector<int>& cells) {
            ++count;
            double w = 0.0;
            for (int c : cells) w += u[static_cast<size_t>(c)];
            if (w > maxw) {
                sum = sum * std::exp(maxw - w) + 1.0;
                maxw = w;
            } else {
                sum += std::exp(w - maxw);
            }
        },
        opts);
    double logz = count == 0 ? -std::numeric_limits<double>::infinity() : maxw + std::log(sum);
    std::cout << "count " << count << "\nlogZ " << fmt(logz) << "\nper_site "
              << fmt(logz / static_cast<double>(box.vol())) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"softpress: transfer-matrix pressure bounds for lattice SOFT models"};
    app.require_subcommand(1);

    std::string digraph_path, u_csv = "0,0", from_csv, to_csv, box_csv, periodic_csv;
    std::string s_inv_csv, m_lower_csv = "12,10", range_csv = "-1.61,4.0", p_list;
    int axis = 1, r = 2, p = 2, q = 1, strip_m2 = 0;
    int m_upper = 12, density_m = 0, grid = 18, m = 10, steps = 64, threads = 0;
    double t_baxter = 1e-5, t_surface = 1e-4, h = 1e-4, gap_tol = -1.0;
    long long budget = 0;
    bool paper_scale = false;
    Output out;
    std::string out_path;

    auto* c_p1 = app.add_subcommand("pressure1d", "1D pressure, densities, entropy");
    c_p1->add_option("--digraph", digraph_path, "digraph JSON file")->required();
    c_p1->add_option("--u", u_csv, "weights, comma separated");
    c_p1->add_option("--axis", axis, "axis to use (1-based)");

    auto* c_b2 = app.add_subcommand("bounds2d", "sandwich bounds for a d=2 SOFT");
    c_b2->add_option("--digraph", digraph_path)->required();
    c_b2->add_option("--u", u_csv);
    c_b2->add_option("--r", r, "upper bound ring = 2r");
    c_b2->add_option("--p", p, "lower bound step");
    c_b2->add_option("--q", q, "lower bound base ring = 2q");
    c_b2->add_option("--strip", strip_m2, "also print the width-m2 strip bound");

    auto* c_mb = app.add_subcommand("md-baxter", "monomer-dimer reference table");
    c_mb->add_option("--s-inv", s_inv_csv, "inverse dimer weights (default: the 18 table values)");
    c_mb->add_option("--m-upper", m_upper);
    c_mb->add_option("--m-lower", m_lower_csv, "HI,LO ring sizes for the lower bound");
    c_mb->add_option("--t", t_baxter, "forward difference step");
    c_mb->add_option("--density-m", density_m, "ring size for densities (default m-upper)");
    c_mb->add_flag("--paper-scale", paper_scale, "production ladder (m = 16/17, slow)");
    c_mb->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* c_ms = app.add_subcommand("md-surface", "pressure/density/entropy surface grid");
    c_ms->add_option("--grid", grid, "points per side");
    c_ms->add_option("--range", range_csv, "LO,HI for both weights");
    c_ms->add_option("--m", m, "ring circumference");
    c_ms->add_option("--t", t_surface, "forward difference step");
    c_ms->add_option("--threads", threads, "worker count (default SOFT_PRESS_THREADS)");
    c_ms->add_option("--out", out_path);

    auto* c_cj = app.add_subcommand("conjugate", "grid Legendre-Fenchel conjugate");
    c_cj->add_option("--digraph", digraph_path)->required();
    c_cj->add_option("--from", from_csv, "segment start in weight space")->required();
    c_cj->add_option("--to", to_csv, "segment end")->required();
    c_cj->add_option("--steps", steps, "sample count");
    c_cj->add_option("--p", p_list, "density vectors, ';' separated")->required();
    c_cj->add_option("--axis", axis);
    c_cj->add_option("--out", out_path);

    auto* c_sc = app.add_subcommand("scan", "first-order transition scan along a segment");
    c_sc->add_option("--digraph", digraph_path)->required();
    c_sc->add_option("--from", from_csv)->required();
    c_sc->add_option("--to", to_csv)->required();
    c_sc->add_option("--steps", steps);
    c_sc->add_option("--h-step", h, "one-sided difference step");
    c_sc->add_option("--gap-tol", gap_tol, "slope jump threshold (default 20*h)");
    c_sc->add_option("--axis", axis);
    c_sc->add_option("--out", out_path);

    auto* c_or = app.add_subcommand("oracle", "brute-force partition sums for validation");
    c_or->add_option("--digraph", digraph_path)->required();
    c_or->add_option("--box", box_csv, "box sides, comma separated")->required();
    c_or->add_option("--u", u_csv);
    c_or->add_option("--periodic", periodic_csv, "periodic axes (1-based)");
    c_or->add_option("--budget", budget, "enumeration node budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!out_path.empty()) out.path = out_path;
    if (threads <= 0) threads = default_thread_count();

    try {
        if (c_p1->parsed()) return run_pressure1d(digraph_path, u_csv, axis);
        if (c_b2->parsed()) return run_bounds2d(digraph_path, u_csv, r, p, q, strip_m2);
        if (c_mb->parsed())
            return run_md_baxter(parse_doubles(s_inv_csv), m_upper, parse_ints(m_lower_csv),
                                 t_baxter, density_m, paper_scale, out);
        if (c_ms->parsed()) {
            auto range = parse_doubles(range_csv);
            if (range.size() != 2) throw DomainError("--range needs LO,HI");
            return run_md_surface(grid, range[0], range[1], m, t_surface, threads, out);
        }
        if (c_cj->parsed())
            return run_conjugate(digraph_path, from_csv, to_csv, steps, p_list, axis, out);
        if (c_sc->parsed())
            return run_scan(digraph_path, from_csv, to_csv, steps, h, gap_tol, axis, out);
        if (c_or->parsed()) return run_oracle(digraph_path, box_csv, u_csv, periodic_csv, budget);
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
