#include "qnm/config.hpp"

#include <cmath>
#include <fstream>

#include "qnm/errors.hpp"

namespace qnm {

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config: " + path.string());
    Config c;
    try {
        in >> c.j_;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config parse error in " + path.string() + ": " + e.what());
    }
    return c;
}

Config Config::parse(const std::string& text) {
    Config c;
    try {
        c.j_ = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    return c;
}

const nlohmann::json* Config::find(const std::string& dotted) const {
    const nlohmann::json* cur = &j_;
    std::size_t pos = 0;
    while (pos <= dotted.size()) {
        const std::size_t dot = dotted.find('.', pos);
        const std::string key = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (!cur->is_object() || !cur->contains(key)) return nullptr;
        cur = &(*cur)[key];
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return cur;
}

const nlohmann::json& Config::require(const std::string& dotted) const {
    const nlohmann::json* p = find(dotted);
    if (!p) throw config_error("config: missing key '" + dotted + "'");
    return *p;
}

bool Config::has(const std::string& dotted) const { return find(dotted) != nullptr; }

double Config::num(const std::string& dotted) const {
    const auto& v = require(dotted);
    if (!v.is_number()) throw config_error("config: key '" + dotted + "' must be a number");
    return v.get<double>();
}

double Config::num_or(const std::string& dotted, double fallback) const {
    return has(dotted) ? num(dotted) : fallback;
}

long long Config::integer(const std::string& dotted) const {
    const auto& v = require(dotted);
    if (!v.is_number_integer()) throw config_error("config: key '" + dotted + "' must be an integer");
    return v.get<long long>();
}

long long Config::integer_or(const std::string& dotted, long long fallback) const {
    return has(dotted) ? integer(dotted) : fallback;
}

std::string Config::str(const std::string& dotted) const {
    const auto& v = require(dotted);
    if (!v.is_string()) throw config_error("config: key '" + dotted + "' must be a string");
    return v.get<std::string>();
}

std::string Config::str_or(const std::string& dotted, const std::string& fallback) const {
    return has(dotted) ? str(dotted) : fallback;
}

std::vector<double> Config::numbers(const std::string& dotted) const {
    const auto& v = require(dotted);
    if (!v.is_array() || v.empty())
        throw config_error("config: key '" + dotted + "' must be a non-empty list");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number())
            throw config_error("config: key '" + dotted + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

ReservoirModel reservoir_from_config(const Config& c, const std::string& prefix) {
    const std::string variant = c.str(prefix + ".variant");
    if (variant == "vacuum_cubic")
        return ReservoirModel::vacuum_cubic(c.num_or(prefix + ".R0", 1.0),
                                            c.num_or(prefix + ".T", 0.0),
                                            c.num_or(prefix + ".omega_cutoff", 0.0));
    if (variant == "lorentzian")
        return ReservoirModel::lorentzian(c.num_or(prefix + ".D", 1.0),
                                          c.num_or(prefix + ".tau_c", 1.0));
    if (variant == "white") return ReservoirModel::white(c.num_or(prefix + ".level", 1.0));
    if (variant == "tabulated") {
        const std::string file = c.str(prefix + ".file");
        std::ifstream in(file);
        if (!in) throw io_error("cannot open tabulated reservoir file: " + file);
        std::optional<double> nz;
        if (c.has(prefix + ".near_zero_exponent")) nz = c.num(prefix + ".near_zero_exponent");
        return ReservoirModel::load_tabulated(in, nz);
    }
    if (variant == "bell") {
        // Synthetic bell density: Gaussian centered off zero, tabulated.
        const double center = c.num(prefix + ".center");
        const double sigma = c.num(prefix + ".sigma");
        const double amp = c.num_or(prefix + ".amplitude", 1.0);
        const double wmax = c.num_or(prefix + ".grid_max", center + 20.0 * sigma);
        const int npts = static_cast<int>(c.integer_or(prefix + ".grid_points", 2001));
        std::vector<double> w(npts), v(npts);
        for (int i = 0; i < npts; ++i) {
            w[i] = -wmax + 2.0 * wmax * i / (npts - 1);
            const double dp = (std::abs(w[i]) - center) / sigma;
            v[i] = amp * std::exp(-0.5 * dp * dp);
        }
        return ReservoirModel::tabulated(std::move(w), std::move(v), std::nullopt);
    }
    throw config_error("config: unknown reservoir variant '" + variant + "' at " + prefix);
}

}  // namespace qnm
