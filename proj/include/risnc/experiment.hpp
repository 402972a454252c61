#pragma once

#include <string>
#include <vector>

#include "risnc/config.hpp"
#include "risnc/sim.hpp"
#include "risnc/types.hpp"

namespace risnc {

enum class Command { relay_awgn, relay_fading, e2e, links, compare };

const char* to_string(Command command);

enum class CsvNode { relay, s1d1, s2d2, rd1, rd2, e2e_d1, e2e_d2, e2e_avg };

const char* to_string(CsvNode node);

struct ExperimentSpec {
    Command command = Command::relay_awgn;
    SystemConfig cfg;
    double snr_start_db = -4.0;
    double snr_stop_db = 12.0;
    double snr_step_db = 2.0;
    StoppingRule stop;
    std::uint64_t master_seed = 1;
    std::string out_path = "ber.csv";
    unsigned workers = 1;
    kernels::Isa isa = kernels::best_isa();
    SweepKind compare_kind = SweepKind::relay_awgn; // curve set for `compare`
};

ExperimentSpec validate(const ExperimentSpec& spec);

std::vector<double> snr_grid(const ExperimentSpec& spec);

// One CSV row. The schema (exact header) is
// snr_db,node,source,ber,ci_low,ci_high,trials,errors,formula_mode,n1,n2,n3,ps1,ps2,pr,seed
struct CsvRow {
    CsvNode node = CsvNode::relay;
    BerPoint point;
};

extern const char* const kCsvHeader;

std::string format_csv_row(const CsvRow& row, const SystemConfig& cfg, std::uint64_t seed);
bool parse_csv_row(const std::string& line, CsvRow& row);

// Exit codes: 0 success, 2 config error, 3 quadrature/formula failure,
// 4 I/O failure. Writes the CSV, a gnuplot stub next to it, and for
// `compare` a text summary; nothing is written when a stage fails.
int run_experiment(const ExperimentSpec& spec);

} // namespace risnc
