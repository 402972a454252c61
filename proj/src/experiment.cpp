#include "risnc/experiment.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "risnc/awgn.hpp"
#include "risnc/errors.hpp"
#include "risnc/fading.hpp"

namespace risnc {

const char* const kCsvHeader =
    "snr_db,node,source,ber,ci_low,ci_high,trials,errors,formula_mode,n1,n2,n3,ps1,ps2,pr,seed";

const char* to_string(Command command) {
    switch (command) {
    case Command::relay_awgn:
        return "relay-awgn";
    case Command::relay_fading:
        return "relay-fading";
    case Command::e2e:
        return "e2e";
    case Command::links:
        return "links";
    case Command::compare:
        return "compare";
    }
    return "unknown";
}

const char* to_string(CsvNode node) {
    switch (node) {
    case CsvNode::relay:
        return "relay";
    case CsvNode::s1d1:
        return "s1d1";
    case CsvNode::s2d2:
        return "s2d2";
    case CsvNode::rd1:
        return "rd1";
    case CsvNode::rd2:
        return "rd2";
    case CsvNode::e2e_d1:
        return "e2e_d1";
    case CsvNode::e2e_d2:
        return "e2e_d2";
    case CsvNode::e2e_avg:
        return "e2e_avg";
    }
    return "unknown";
}

namespace {

std::string format_double(double v) {
    std::array<char, 40> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), result.ptr);
}

std::string format_u64(std::uint64_t v) {
    std::array<char, 24> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), result.ptr);
}

bool parse_double_field(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end;
}

bool parse_u64_field(const std::string& s, std::uint64_t& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end;
}

bool node_from_string(const std::string& s, CsvNode& out) {
    static const std::map<std::string, CsvNode> table = {
        {"relay", CsvNode::relay},     {"s1d1", CsvNode::s1d1},
        {"s2d2", CsvNode::s2d2},       {"rd1", CsvNode::rd1},
        {"rd2", CsvNode::rd2},         {"e2e_d1", CsvNode::e2e_d1},
        {"e2e_d2", CsvNode::e2e_d2},   {"e2e_avg", CsvNode::e2e_avg},
    };
    const auto it = table.find(s);
    if (it == table.end()) {
        return false;
    }
    out = it->second;
    return true;
}

bool source_from_string(const std::string& s, Source& out) {
    if (s == "analytic-exact") {
        out = Source::analytic_exact;
    } else if (s == "analytic-approx") {
        out = Source::analytic_approx;
    } else if (s == "analytic-bound") {
        out = Source::analytic_bound;
    } else if (s == "mc") {
        out = Source::mc;
    } else {
        return false;
    }
    return true;
}

std::string output_stem(const std::string& out_path) {
    const std::string suffix = ".csv";
    if (out_path.size() > suffix.size() &&
        out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return out_path.substr(0, out_path.size() - suffix.size());
    }
    return out_path;
}

} // namespace

ExperimentSpec validate(const ExperimentSpec& spec) {
    validate(spec.cfg);
    validate(spec.stop);
    if (!(spec.snr_start_db < spec.snr_stop_db)) {
        throw ConfigError("snr_start must be less than snr_stop");
    }
    if (!(spec.snr_step_db > 0.0)) {
        throw ConfigError("snr_step must be positive");
    }
    if (spec.out_path.empty()) {
        throw ConfigError("output path must not be empty");
    }
    return spec;
}

std::vector<double> snr_grid(const ExperimentSpec& spec) {
    std::vector<double> grid;
    const double eps = spec.snr_step_db * 1e-9;
    for (double snr = spec.snr_start_db; snr <= spec.snr_stop_db + eps;
         snr += spec.snr_step_db) {
        grid.push_back(snr);
    }
    return grid;
}

std::string format_csv_row(const CsvRow& row, const SystemConfig& cfg, std::uint64_t seed) {
    std::string out;
    out += format_double(row.point.snr_db);
    out += ',';
    out += to_string(row.node);
    out += ',';
    out += to_string(row.point.source);
    out += ',';
    out += format_double(row.point.ber);
    out += ',';
    out += format_double(row.point.ci_low);
    out += ',';
    out += format_double(row.point.ci_high);
    out += ',';
    out += format_u64(row.point.trials);
    out += ',';
    out += format_u64(row.point.errors);
    out += ',';
    out += to_string(cfg.formula_mode);
    out += ',';
    out += format_u64(static_cast<std::uint64_t>(cfg.n1));
    out += ',';
    out += format_u64(static_cast<std::uint64_t>(cfg.n2));
    out += ',';
    out += format_u64(static_cast<std::uint64_t>(cfg.n3));
    out += ',';
    out += format_double(cfg.ps1);
    out += ',';
    out += format_double(cfg.ps2);
    out += ',';
    out += format_double(cfg.pr);
    out += ',';
    out += format_u64(seed);
    return out;
}

bool parse_csv_row(const std::string& line, CsvRow& row) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (fields.size() != 16) {
        return false;
    }
    BerPoint p;
    if (!parse_double_field(fields[0], p.snr_db)) {
        return false;
    }
    CsvNode node;
    if (!node_from_string(fields[1], node)) {
        return false;
    }
    if (!source_from_string(fields[2], p.source)) {
        return false;
    }
    if (!parse_double_field(fields[3], p.ber) || !parse_double_field(fields[4], p.ci_low) ||
        !parse_double_field(fields[5], p.ci_high)) {
        return false;
    }
    if (!parse_u64_field(fields[6], p.trials) || !parse_u64_field(fields[7], p.errors)) {
        return false;
    }
    row.node = node;
    row.point = p;
    return true;
}

namespace {

BerPoint pooled_mc(double snr_db, const BerPoint& a, const BerPoint& b) {
    BerPoint p;
    p.snr_db = snr_db;
    p.source = Source::mc;
    p.trials = a.trials + b.trials;
    p.errors = a.errors + b.errors;
    p.ber = p.trials == 0 ? 0.0
                          : static_cast<double>(p.errors) / static_cast<double>(p.trials);
    wilson_interval(p.errors, p.trials, p.ci_low, p.ci_high);
    return p;
}

struct LinkAnalytic {
    CsvNode node;
    LinkId id;
    LinkBudget budget;
};

std::vector<LinkAnalytic> link_table(const SystemConfig& cfg) {
    return {
        {CsvNode::s1d1, LinkId::s1d1, LinkBudget{cfg.n1 / 2, cfg.ps1}},
        {CsvNode::s2d2, LinkId::s2d2, LinkBudget{cfg.n2 / 2, cfg.ps2}},
        {CsvNode::rd1, LinkId::rd1, LinkBudget{cfg.n3 / 2, cfg.pr}},
        {CsvNode::rd2, LinkId::rd2, LinkBudget{cfg.n3 / 2, cfg.pr}},
    };
}

void append_analytic(std::vector<CsvRow>& rows, CsvNode node, double snr_db, double value,
                     Source source) {
    rows.push_back(CsvRow{node, BerPoint::analytic(snr_db, value, source)});
}

void build_relay_awgn_rows(const ExperimentSpec& spec, double snr_db, std::vector<CsvRow>& rows) {
    const SystemConfig at = spec.cfg.at_snr_db(snr_db);
    append_analytic(rows, CsvNode::relay, snr_db, awgn_relay_ber_exact(at),
                    Source::analytic_exact);
    append_analytic(rows, CsvNode::relay, snr_db, awgn_relay_ber_approx(at),
                    Source::analytic_approx);
    const SimOptions opts{spec.workers, spec.isa};
    rows.push_back(CsvRow{CsvNode::relay,
                          estimate_relay_ber(spec.cfg, snr_db, spec.stop, spec.master_seed,
                                             RelayEnvironment::awgn, opts)});
}

void build_relay_fading_rows(const ExperimentSpec& spec, double snr_db,
                             std::vector<CsvRow>& rows) {
    if (spec.cfg.ris_enabled) {
        const SystemConfig at = spec.cfg.at_snr_db(snr_db);
        append_analytic(rows, CsvNode::relay, snr_db, relay_ber_exact_fading(at),
                        Source::analytic_exact);
        append_analytic(rows, CsvNode::relay, snr_db, relay_ber_approx_fading(at),
                        Source::analytic_approx);
        append_analytic(rows, CsvNode::relay, snr_db, relay_ber_upper_bound(at),
                        Source::analytic_bound);
    }
    const SimOptions opts{spec.workers, spec.isa};
    rows.push_back(CsvRow{CsvNode::relay,
                          estimate_relay_ber(spec.cfg, snr_db, spec.stop, spec.master_seed,
                                             RelayEnvironment::fading, opts)});
}

void build_e2e_rows(const ExperimentSpec& spec, double snr_db, std::vector<CsvRow>& rows,
                    bool include_links) {
    const SimOptions opts{spec.workers, spec.isa};
    if (spec.cfg.ris_enabled) {
        const SystemConfig at = spec.cfg.at_snr_db(snr_db);
        if (include_links) {
            for (const LinkAnalytic& link : link_table(at)) {
                append_analytic(rows, link.node, snr_db,
                                link_ber(link.budget, at.n0, LinkMode::integral),
                                Source::analytic_exact);
                append_analytic(rows, link.node, snr_db,
                                link_ber(link.budget, at.n0, LinkMode::bound),
                                Source::analytic_bound);
            }
            append_analytic(rows, CsvNode::relay, snr_db, relay_ber_exact_fading(at),
                            Source::analytic_exact);
        }
        const double d1_exact = overall_ber(at, Destination::d1, LinkMode::integral).value;
        const double d2_exact = overall_ber(at, Destination::d2, LinkMode::integral).value;
        const double d1_bound = overall_ber(at, Destination::d1, LinkMode::bound).value;
        const double d2_bound = overall_ber(at, Destination::d2, LinkMode::bound).value;
        append_analytic(rows, CsvNode::e2e_d1, snr_db, d1_exact, Source::analytic_exact);
        append_analytic(rows, CsvNode::e2e_d1, snr_db, d1_bound, Source::analytic_bound);
        append_analytic(rows, CsvNode::e2e_d2, snr_db, d2_exact, Source::analytic_exact);
        append_analytic(rows, CsvNode::e2e_d2, snr_db, d2_bound, Source::analytic_bound);
        append_analytic(rows, CsvNode::e2e_avg, snr_db, 0.5 * (d1_exact + d2_exact),
                        Source::analytic_exact);
        append_analytic(rows, CsvNode::e2e_avg, snr_db, 0.5 * (d1_bound + d2_bound),
                        Source::analytic_bound);
    }

    const E2eEstimate d1 =
        estimate_e2e_full(spec.cfg, snr_db, Destination::d1, spec.stop, spec.master_seed, opts);
    const E2eEstimate d2 =
        estimate_e2e_full(spec.cfg, snr_db, Destination::d2, spec.stop, spec.master_seed, opts);
    rows.push_back(CsvRow{CsvNode::s1d1, d1.local});
    rows.push_back(CsvRow{CsvNode::s2d2, d2.local});
    rows.push_back(CsvRow{CsvNode::e2e_d1, d1.remote});
    rows.push_back(CsvRow{CsvNode::e2e_d2, d2.remote});
    rows.push_back(CsvRow{CsvNode::e2e_avg, pooled_mc(snr_db, d1.remote, d2.remote)});
}

void build_links_rows(const ExperimentSpec& spec, double snr_db, std::vector<CsvRow>& rows) {
    const SimOptions opts{spec.workers, spec.isa};
    const SystemConfig at = spec.cfg.at_snr_db(snr_db);
    for (const LinkAnalytic& link : link_table(at)) {
        if (spec.cfg.ris_enabled) {
            append_analytic(rows, link.node, snr_db,
                            link_ber(link.budget, at.n0, LinkMode::integral),
                            Source::analytic_exact);
            append_analytic(rows, link.node, snr_db,
                            link_ber(link.budget, at.n0, LinkMode::bound),
                            Source::analytic_bound);
        }
        rows.push_back(CsvRow{link.node, estimate_link_ber(spec.cfg, link.id, snr_db, spec.stop,
                                                           spec.master_seed, opts)});
    }
}

void build_compare_rows(const ExperimentSpec& spec, double snr_db, std::vector<CsvRow>& rows) {
    switch (spec.compare_kind) {
    case SweepKind::relay_awgn:
        build_relay_awgn_rows(spec, snr_db, rows);
        break;
    case SweepKind::relay_fading:
        build_relay_fading_rows(spec, snr_db, rows);
        break;
    case SweepKind::e2e_d1:
    case SweepKind::e2e_d2:
        build_e2e_rows(spec, snr_db, rows, false);
        break;
    case SweepKind::links:
        build_links_rows(spec, snr_db, rows);
        break;
    }
}

std::string build_gnuplot_stub(const std::string& csv_name, const std::vector<CsvRow>& rows) {
    // one plot expression per (node, source) pair present
    std::vector<std::pair<std::string, std::string>> curves;
    for (const CsvRow& row : rows) {
        const std::pair<std::string, std::string> key{to_string(row.node),
                                                      to_string(row.point.source)};
        bool seen = false;
        for (const auto& c : curves) {
            if (c == key) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            curves.push_back(key);
        }
    }

    std::ostringstream out;
    out << "# render with: gnuplot -p <this file>\n";
    out << "set datafile separator comma\n";
    out << "set logscale y\n";
    out << "set xlabel \"10*log10(1/N0) [dB]\"\n";
    out << "set ylabel \"BER\"\n";
    out << "set grid\n";
    out << "set key outside\n";
    out << "plot \\\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        out << "  \"" << csv_name << "\" using 1:((strcol(2) eq \"" << curves[i].first
            << "\" && strcol(3) eq \"" << curves[i].second
            << "\") ? column(4) : NaN) with linespoints title \"" << curves[i].first << " "
            << curves[i].second << "\"";
        out << (i + 1 < curves.size() ? ", \\\n" : "\n");
    }
    return out.str();
}

std::string build_compare_summary(const std::vector<CsvRow>& rows) {
    // group per node: analytic-exact and mc curves
    std::map<std::string, std::vector<BerPoint>> analytic;
    std::map<std::string, std::vector<BerPoint>> mc;
    for (const CsvRow& row : rows) {
        if (row.point.source == Source::analytic_exact) {
            analytic[to_string(row.node)].push_back(row.point);
        } else if (row.point.source == Source::mc) {
            mc[to_string(row.node)].push_back(row.point);
        }
    }

    std::ostringstream out;
    out << "node,max_abs_log10_gap,analytic_crossing_1e-3_db,mc_crossing_1e-3_db\n";
    for (const auto& [node, mc_points] : mc) {
        double max_gap = 0.0;
        bool have_gap = false;
        const auto it = analytic.find(node);
        if (it != analytic.end()) {
            for (const BerPoint& m : mc_points) {
                for (const BerPoint& a : it->second) {
                    if (a.snr_db == m.snr_db && a.ber > 0.0 && m.ber > 0.0) {
                        const double gap = std::fabs(std::log10(a.ber) - std::log10(m.ber));
                        max_gap = std::max(max_gap, gap);
                        have_gap = true;
                    }
                }
            }
        }
        double a_cross = 0.0;
        double m_cross = 0.0;
        const bool have_a =
            it != analytic.end() && ber_crossing_db(it->second, 1e-3, a_cross);
        const bool have_m = ber_crossing_db(mc_points, 1e-3, m_cross);
        out << node << ',';
        out << (have_gap ? format_double(max_gap) : "n/a") << ',';
        out << (have_a ? format_double(a_cross) : "n/a") << ',';
        out << (have_m ? format_double(m_cross) : "n/a") << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

} // namespace

int run_experiment(const ExperimentSpec& raw_spec) {
    ExperimentSpec spec;
    std::vector<CsvRow> rows;
    try {
        spec = validate(raw_spec);
        for (const double snr : snr_grid(spec)) {
            switch (spec.command) {
            case Command::relay_awgn:
                build_relay_awgn_rows(spec, snr, rows);
                break;
            case Command::relay_fading:
                build_relay_fading_rows(spec, snr, rows);
                break;
            case Command::e2e:
                build_e2e_rows(spec, snr, rows, true);
                break;
            case Command::links:
                build_links_rows(spec, snr, rows);
                break;
            case Command::compare:
                build_compare_rows(spec, snr, rows);
                break;
            }
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const QuadratureError& e) {
        std::fprintf(stderr, "quadrature error: %s\n", e.what());
        return 3;
    } catch (const InvalidMgfError& e) {
        std::fprintf(stderr, "formula error: %s\n", e.what());
        return 3;
    }

    try {
        std::string csv;
        csv += kCsvHeader;
        csv += '\n';
        for (const CsvRow& row : rows) {
            csv += format_csv_row(row, spec.cfg, spec.master_seed);
            csv += '\n';
        }
        write_file(spec.out_path, csv);

        const std::string stem = output_stem(spec.out_path);
        std::string csv_name = spec.out_path;
        const std::size_t slash = csv_name.find_last_of('/');
        if (slash != std::string::npos) {
            csv_name = csv_name.substr(slash + 1);
        }
        write_file(stem + ".gnuplot", build_gnuplot_stub(csv_name, rows));
        if (spec.command == Command::compare) {
            write_file(stem + "_summary.txt", build_compare_summary(rows));
        }
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    }
    return 0;
}

} // namespace risnc
