#include "pmrac/strategy_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pmrac {

namespace {

using nlohmann::json;

const std::array<std::string, 8> kBits = {"000", "001", "010", "011", "100", "101", "110", "111"};

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw std::invalid_argument(path + ": expected " + std::to_string(dim) + " rows");
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw std::invalid_argument(path + ": row " + std::to_string(i) + " must have " +
                                        std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c) {
            const json& e = row[c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw std::invalid_argument(path + ": entry (" + std::to_string(i) + "," +
                                            std::to_string(c) + ") must be [re, im]");
            m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

}  // namespace

std::string strategy_to_json(const Strategy& s) {
    json j;
    j["state"] = matrix_to_json(s.state.rho);
    json us = json::object();
    for (int x = 0; x < 8; ++x) us[kBits[x]] = matrix_to_json(s.alice.u[x]);
    j["unitaries"] = std::move(us);
    json obs = json::array();
    for (int y = 0; y < 3; ++y) obs.push_back(matrix_to_json(s.bob.b[y]));
    j["observables"] = std::move(obs);
    return j.dump(2) + "\n";
}

Strategy strategy_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("json parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("top level: expected an object");
    for (const char* key : {"state", "unitaries", "observables"})
        if (!j.contains(key)) throw std::invalid_argument(std::string(key) + ": missing");

    Strategy s;
    s.state.rho = matrix_from_json(j["state"], 4, "state");
    const json& us = j["unitaries"];
    if (!us.is_object()) throw std::invalid_argument("unitaries: expected an object");
    for (int x = 0; x < 8; ++x) {
        if (!us.contains(kBits[x]))
            throw std::invalid_argument("unitaries/" + kBits[x] + ": missing");
        s.alice.u[x] = matrix_from_json(us[kBits[x]], 2, "unitaries/" + kBits[x]);
    }
    const json& obs = j["observables"];
    if (!obs.is_array() || obs.size() != 3)
        throw std::invalid_argument("observables: expected a list of three matrices");
    for (int y = 0; y < 3; ++y)
        s.bob.b[y] = matrix_from_json(obs[y], 4, "observables/" + std::to_string(y));
    return s;
}

std::string report_to_json(const CertificationReport& rep) {
    json j;
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"measured", c.measured},
                          {"target", c.target},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    j["checks"] = std::move(checks);
    j["overall"] = rep.overall;
    j["gauge_note"] = rep.gauge_note;
    return j.dump(2) + "\n";
}

std::string report_to_table(const CertificationReport& rep) {
    std::ostringstream os;
    os << std::left << std::setw(36) << "check" << std::right << std::setw(16) << "measured"
       << std::setw(16) << "target" << std::setw(12) << "tol" << "  result\n";
    os << std::string(86, '-') << "\n";
    for (const auto& c : rep.checks) {
        os << std::left << std::setw(36) << c.name << std::right << std::setprecision(10)
           << std::setw(16) << c.measured << std::setw(16) << c.target << std::setprecision(1)
           << std::scientific << std::setw(12) << c.tolerance << std::defaultfloat
           << (c.pass ? "  pass" : "  FAIL") << "\n";
    }
    os << std::string(86, '-') << "\n";
    os << "overall: " << (rep.overall ? "PASS" : "FAIL") << "\n";
    if (!rep.gauge_note.empty()) os << "note: " << rep.gauge_note << "\n";
    return os.str();
}

Strategy load_strategy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return strategy_from_json(buf.str());
}

void save_strategy_file(const Strategy& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << strategy_to_json(s);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pmrac
