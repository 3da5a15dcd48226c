#pragma once
// Deterministic CSV / plot-data output: '.' decimal, 'e' exponents, 17
// significant digits, no locale or wall-clock leakage.

#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace qnm {

std::string format_g17(double v);

using Cell = std::variant<double, long long, std::string>;

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<Cell>& cells);
    void close();

private:
    std::ofstream out_;
};

// Space-separated two/three-column plot data, same float format.
class PlotWriter {
public:
    explicit PlotWriter(const std::filesystem::path& path, const std::string& comment = "");
    void row(const std::vector<double>& cols);

private:
    std::ofstream out_;
};

}  // namespace qnm
