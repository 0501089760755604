#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fpcqed/spectra.hpp"

namespace fpcqed {

/// CSV with a "# key = value" metadata preamble. Numbers use a fixed %.10g format so output is
/// byte-identical across runs and thread counts.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<std::string> columns);

    void metadata(const std::string& key, const std::string& value);
    void metadata(const std::vector<std::pair<std::string, std::string>>& entries);
    void row(const std::vector<double>& values);
    /// Writes a comment row, e.g. to record a failed sweep point without breaking the table.
    void comment(const std::string& text);

    static std::string number(double v);

private:
    void ensure_header();

    std::ostream& out_;
    std::vector<std::string> columns_;
    bool header_written_ = false;
};

/// Columns omega_ueV, omegaprime_ueV, re, im, frequencies measured from the carrier.
void write_spectrum_csv(std::ostream& out, const DenseSpectrum& s,
                        const std::vector<std::pair<std::string, std::string>>& meta = {});

/// Columns omega_ueV, S for the diagonal only.
void write_diagonal_csv(std::ostream& out, const DenseSpectrum& s,
                        const std::vector<std::pair<std::string, std::string>>& meta = {});

void write_correlator_csv(std::ostream& out, const TwoTimeCorrelator& c,
                          const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace fpcqed
