#include "fpcqed/csv.hpp"

#include <cmath>
#include <cstdio>

#include "fpcqed/errors.hpp"

namespace fpcqed {

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> columns)
    : out_(out), columns_(std::move(columns)) {
    if (columns_.empty()) throw InvalidArgument("CSV needs at least one column");
    out_ << "# fpcqed " << FPCQED_VERSION << '\n';
}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
    if (header_written_) throw InvalidArgument("CSV metadata must precede the header");
    out_ << "# " << key << " = " << value << '\n';
}

void CsvWriter::metadata(const std::vector<std::pair<std::string, std::string>>& entries) {
    for (const auto& [k, v] : entries) metadata(k, v);
}

void CsvWriter::ensure_header() {
    if (header_written_) return;
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
    header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw InvalidArgument("CSV row width does not match the header");
    ensure_header();
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << number(values[i]);
    out_ << '\n';
}

void CsvWriter::comment(const std::string& text) {
    ensure_header();
    out_ << "# " << text << '\n';
}

std::string CsvWriter::number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) return "0";  // folds −0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_spectrum_csv(std::ostream& out, const DenseSpectrum& s,
                        const std::vector<std::pair<std::string, std::string>>& meta) {
    CsvWriter w(out, {"omega_ueV", "omegaprime_ueV", "re", "im"});
    w.metadata("carrier_ueV", CsvWriter::number(s.carrier));
    w.metadata(meta);
    for (std::size_t i = 0; i < s.omega.size(); ++i)
        for (std::size_t j = 0; j < s.omega.size(); ++j) {
            const auto v = s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            w.row({s.omega[i], s.omega[j], v.real(), v.imag()});
        }
}

void write_diagonal_csv(std::ostream& out, const DenseSpectrum& s,
                        const std::vector<std::pair<std::string, std::string>>& meta) {
    CsvWriter w(out, {"omega_ueV", "S"});
    w.metadata("carrier_ueV", CsvWriter::number(s.carrier));
    w.metadata(meta);
    for (std::size_t i = 0; i < s.omega.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        w.row({s.omega[i], s.values(k, k).real()});
    }
}

void write_correlator_csv(std::ostream& out, const TwoTimeCorrelator& c,
                          const std::vector<std::pair<std::string, std::string>>& meta) {
    CsvWriter w(out, {"t_ps", "tprime_ps", "re", "im"});
    w.metadata(meta);
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b) {
            const auto v = c.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            w.row({c.times[a], c.times[b], v.real(), v.imag()});
        }
}

}  // namespace fpcqed
