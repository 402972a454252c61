#include "risnc/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "risnc/errors.hpp"

namespace risnc {

const char* to_string(FormulaMode mode) {
    switch (mode) {
    case FormulaMode::printed:
        return "printed";
    case FormulaMode::corrected:
        return "corrected";
    case FormulaMode::derived:
        return "derived";
    }
    return "unknown";
}

bool formula_mode_from_string(const std::string& text, FormulaMode& out) {
    if (text == "printed") {
        out = FormulaMode::printed;
    } else if (text == "corrected") {
        out = FormulaMode::corrected;
    } else if (text == "derived") {
        out = FormulaMode::derived;
    } else {
        return false;
    }
    return true;
}

const char* to_string(Source source) {
    switch (source) {
    case Source::analytic_exact:
        return "analytic-exact";
    case Source::analytic_approx:
        return "analytic-approx";
    case Source::analytic_bound:
        return "analytic-bound";
    case Source::mc:
        return "mc";
    }
    return "unknown";
}

BerPoint BerPoint::analytic(double snr_db, double ber, Source source) {
    BerPoint p;
    p.snr_db = snr_db;
    p.ber = ber;
    p.source = source;
    p.ci_low = ber;
    p.ci_high = ber;
    return p;
}

SystemConfig SystemConfig::at_snr_db(double snr_db) const {
    SystemConfig out = *this;
    out.n0 = std::pow(10.0, -snr_db / 10.0);
    return out;
}

namespace {

void require(bool ok, const char* message) {
    if (!ok) {
        throw ConfigError(message);
    }
}

} // namespace

SystemConfig validate(const SystemConfig& cfg) {
    require(std::isfinite(cfg.ps1) && cfg.ps1 > 0.0, "ps1 must be positive");
    require(std::isfinite(cfg.ps2) && cfg.ps2 > 0.0, "ps2 must be positive");
    require(std::isfinite(cfg.pr) && cfg.pr > 0.0, "pr must be positive");
    require(std::isfinite(cfg.n0) && cfg.n0 > 0.0, "noise variance must be positive");
    require(cfg.n1 >= 2, "n1 element count must be at least 2");
    require(cfg.n2 >= 2, "n2 element count must be at least 2");
    require(cfg.n3 >= 2, "n3 element count must be at least 2");
    require(cfg.n1 % 2 == 0, "n1 element count must be even");
    require(cfg.n2 % 2 == 0, "n2 element count must be even");
    require(cfg.n3 % 2 == 0, "n3 element count must be even");
    require(std::isfinite(cfg.eta1) && cfg.eta1 > 0.0 && cfg.eta1 <= 1.0,
            "eta1 must be in (0, 1]");
    require(std::isfinite(cfg.eta2) && cfg.eta2 > 0.0 && cfg.eta2 <= 1.0,
            "eta2 must be in (0, 1]");
    require(std::isfinite(cfg.eta3) && cfg.eta3 > 0.0 && cfg.eta3 <= 1.0,
            "eta3 must be in (0, 1]");
    return cfg;
}

LinkBudget validate(const LinkBudget& link) {
    require(link.allocated_elements >= 0, "allocated_elements must be nonnegative");
    require(std::isfinite(link.tx_power) && link.tx_power > 0.0, "tx_power must be positive");
    return link;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

double parse_double(const std::string& value, const std::string& key) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError("config key '" + key + "' has a non-numeric value '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& value, const std::string& key) {
    int out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError("config key '" + key + "' has a non-integer value '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw ConfigError("config key '" + key + "' has a non-boolean value '" + value + "'");
}

} // namespace

SystemConfig parse_config_text(const std::string& text, SystemConfig base) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not of the form 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "ps1") {
            base.ps1 = parse_double(value, key);
        } else if (key == "ps2") {
            base.ps2 = parse_double(value, key);
        } else if (key == "pr") {
            base.pr = parse_double(value, key);
        } else if (key == "n0") {
            base.n0 = parse_double(value, key);
        } else if (key == "n1") {
            base.n1 = parse_int(value, key);
        } else if (key == "n2") {
            base.n2 = parse_int(value, key);
        } else if (key == "n3") {
            base.n3 = parse_int(value, key);
        } else if (key == "eta1") {
            base.eta1 = parse_double(value, key);
        } else if (key == "eta2") {
            base.eta2 = parse_double(value, key);
        } else if (key == "eta3") {
            base.eta3 = parse_double(value, key);
        } else if (key == "formula_mode") {
            if (!formula_mode_from_string(value, base.formula_mode)) {
                throw ConfigError("config key 'formula_mode' must be printed, corrected or derived");
            }
        } else if (key == "ris_enabled") {
            base.ris_enabled = parse_bool(value, key);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return base;
}

SystemConfig parse_config_file(const std::string& path, SystemConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), base);
}

} // namespace risnc
