#pragma once

#include <string>

#include "risnc/types.hpp"

namespace risnc {

// Every scenario parameter in one place. Powers and the noise variance are
// linear watts; element counts are the *total* panel sizes (each panel is
// split in half between its two served links).
struct SystemConfig {
    double ps1 = 2.0;
    double ps2 = 1.0;
    double pr = 2.0;
    double n0 = 1.0;
    int n1 = 8;
    int n2 = 8;
    int n3 = 8;
    double eta1 = 1.0;
    double eta2 = 1.0;
    double eta3 = 1.0;
    FormulaMode formula_mode = FormulaMode::derived;
    bool ris_enabled = true;

    // Copy with the noise variance set from an SNR-axis value,
    // snr_db = 10*log10(1/n0), transmit powers held fixed.
    SystemConfig at_snr_db(double snr_db) const;

    double min_power() const { return ps1 < ps2 ? ps1 : ps2; }
    double max_power() const { return ps1 > ps2 ? ps1 : ps2; }
};

// Returns the config unchanged iff every invariant holds, otherwise throws
// ConfigError naming the offending field.
SystemConfig validate(const SystemConfig& cfg);

// Element allocation and transmit power of a single RIS-assisted link.
struct LinkBudget {
    int allocated_elements = 0;
    double tx_power = 1.0;
};

LinkBudget validate(const LinkBudget& link);

// Flat `key = value` config file; '#' starts a comment, blank lines are
// ignored, keys are the SystemConfig field names. Unknown keys and
// unparsable values are ConfigErrors.
SystemConfig parse_config_file(const std::string& path, SystemConfig base = {});
SystemConfig parse_config_text(const std::string& text, SystemConfig base = {});

} // namespace risnc
