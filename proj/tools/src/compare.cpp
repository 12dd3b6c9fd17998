#include "greenroute/compare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "greenroute/exact.hpp"
#include "greenroute/instance_io.hpp"
#include "greenroute/instgen.hpp"

namespace greenroute {

std::uint64_t instance_seed(std::uint64_t base, int n, int trial) {
    return base * 1000003ULL + static_cast<std::uint64_t>(n) * 1000ULL + static_cast<std::uint64_t>(trial);
}

CompareRow compare_instance(const std::string& id, const Instance& inst, std::uint64_t sa_seed, double exact_budget_s,
                            AnnealTrace* trace) {
    CompareRow row;
    row.instance_id = id;
    row.n = inst.customers();

    const ExactResult exact = solve_exact(inst, exact_budget_s);
    row.exact_time_s = exact.seconds;
    row.exact_proven = exact.proven;
    if (exact.has_solution()) {
        row.exact_objective = exact.optimum.total;
    } else {
        row.note = std::string("exact ") + to_string(exact.status);
    }

    SAConfig cfg;
    cfg.seed = sa_seed;
    AnnealResult sa = anneal(inst, cfg);
    row.sa_time_s = sa.seconds;
    if (sa.status == AnnealStatus::Solved) {
        row.sa_objective = sa.objective.total;
    } else {
        row.note += row.note.empty() ? "sa unsolved" : "; sa unsolved";
    }
    if (trace) *trace = std::move(sa.trace);

    if (row.exact_objective && row.sa_objective && *row.exact_objective != 0.0) {
        row.gap_pct = 100.0 * (*row.sa_objective - *row.exact_objective) / *row.exact_objective;
    }
    if (row.exact_time_s > 0.0) {
        row.time_decrease_pct = 100.0 * (row.exact_time_s - row.sa_time_s) / row.exact_time_s;
    }
    return row;
}

std::vector<CompareRow> run_compare(const CompareOptions& opts) {
    struct Job {
        int n;
        int trial;
    };
    std::vector<Job> jobs;
    for (int n : opts.sizes) {
        for (int t = 0; t < opts.trials; ++t) jobs.push_back({n, t});
    }
    std::vector<CompareRow> rows(jobs.size());
    if (!opts.plot_dir.empty()) std::filesystem::create_directories(opts.plot_dir);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            const std::string id = "n" + std::to_string(job.n) + "_t" + std::to_string(job.trial);
            GenSpec spec;
            spec.customers = job.n;
            spec.seed = instance_seed(opts.seed, job.n, job.trial);
            try {
                const Instance inst = generate(spec);
                AnnealTrace trace;
                rows[i] = compare_instance(id, inst, spec.seed, opts.exact_budget_s, &trace);
                if (!opts.plot_dir.empty()) {
                    std::ofstream svg(opts.plot_dir / (id + ".svg"));
                    write_convergence_svg(svg, trace, id);
                    if (!svg) rows[i].note += rows[i].note.empty() ? "plot write failed" : "; plot write failed";
                }
            } catch (const std::exception& e) {
                rows[i].instance_id = id;
                rows[i].n = job.n;
                rows[i].note = e.what();
            }
        }
    };

    const int threads = std::clamp(opts.jobs, 1, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return rows;
}

namespace {

std::string field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
    out << "instance_id,n,exact_objective,exact_time_s,exact_proven,sa_objective,sa_time_s,gap_pct,"
           "time_decrease_pct,note\n";
    for (const auto& r : rows) {
        out << csv_quote(r.instance_id) << ',' << r.n << ',' << field(r.exact_objective) << ','
            << format_double(r.exact_time_s) << ',' << (r.exact_proven ? "true" : "false") << ','
            << field(r.sa_objective) << ',' << format_double(r.sa_time_s) << ',' << field(r.gap_pct) << ','
            << field(r.time_decrease_pct) << ',' << csv_quote(r.note) << '\n';
    }
}

void write_convergence_svg(std::ostream& out, const AnnealTrace& trace, const std::string& title) {
    constexpr double width = 640, height = 400, left = 80, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& row : trace.rows) {
        lo = std::min({lo, row.best, row.current});
        hi = std::max({hi, row.best, row.current});
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    }
    const int last_epoch = trace.rows.empty() ? 1 : std::max(trace.rows.back().epoch, 1);
    auto px = [&](int epoch) { return left + plot_w * epoch / last_epoch; };
    auto py = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

    auto polyline = [&](const char* colour, double stroke, auto value) {
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << stroke << "\" points=\"";
        for (const auto& row : trace.rows) out << px(row.epoch) << ',' << py(value(row)) << ' ';
        out << "\"/>\n";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << title << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";

    std::ostringstream hi_label, lo_label;
    hi_label.precision(6);
    lo_label.precision(6);
    hi_label << hi;
    lo_label << lo;
    out << "<text x=\"" << left - 6 << "\" y=\"" << top + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << hi_label.str() << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << lo_label.str() << "</text>\n";
    out << "<text x=\"" << left << "\" y=\"" << height - 30
        << "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
    out << "<text x=\"" << left + plot_w << "\" y=\"" << height - 30
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << last_epoch << "</text>\n";
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">epoch</text>\n";

    polyline("#b0b0b0", 1, [](const TraceRow& r) { return r.current; });
    polyline("#1f5fa8", 2, [](const TraceRow& r) { return r.best; });
    out << "</svg>\n";
}

}  // namespace greenroute
