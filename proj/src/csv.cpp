#include "qnm/csv.hpp"

#include <cstdio>

#include "qnm/errors.hpp"

namespace qnm {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) {
    out_.open(path);
    if (!out_) throw io_error("cannot open for writing: " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << (i ? "," : "") << header[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ",";
        if (const double* d = std::get_if<double>(&cells[i]))
            out_ << format_g17(*d);
        else if (const long long* n = std::get_if<long long>(&cells[i]))
            out_ << *n;
        else
            out_ << std::get<std::string>(cells[i]);
    }
    out_ << "\n";
}

void CsvWriter::close() { out_.close(); }

PlotWriter::PlotWriter(const std::filesystem::path& path, const std::string& comment) {
    out_.open(path);
    if (!out_) throw io_error("cannot open for writing: " + path.string());
    if (!comment.empty()) out_ << "# " << comment << "\n";
}

void PlotWriter::row(const std::vector<double>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i)
        out_ << (i ? " " : "") << format_g17(cols[i]);
    out_ << "\n";
}

}  // namespace qnm
