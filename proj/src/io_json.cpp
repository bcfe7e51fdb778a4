#include "qcap/io_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qcap/ppt_prime.hpp"

namespace qcap {

namespace {

json number_or_inf(double v) {
    if (!std::isfinite(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
}

json alpha_json(const Alpha& a) {
    if (a.is_limit1()) return json("limit-1");
    return json(a.value());
}

}  // namespace

json to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            const Cx v = m(i, j);
            row.push_back(json::array({v.real(), v.imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("matrix json: expected nested arrays");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols)
            throw std::runtime_error("matrix json: ragged rows");
        for (int c = 0; c < cols; ++c) {
            const json& cell = j[r][c];
            if (!cell.is_array() || cell.size() != 2)
                throw std::runtime_error("matrix json: cell must be [re, im]");
            m(r, c) = Cx(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

json to_json(const PureState& s) {
    json amps = json::array();
    for (const Cx& a : s.amplitudes) amps.push_back(json::array({a.real(), a.imag()}));
    double norm2 = 0.0;
    for (const Cx& a : s.amplitudes) norm2 += std::norm(a);
    json j;
    j["dims"] = s.dims;
    j["amplitudes"] = std::move(amps);
    j["unit_norm"] = std::abs(std::sqrt(norm2) - 1.0) <= 1e-10;
    return j;
}

json to_json(const PptPrimeElement& t) {
    json j;
    j["dims"] = json::array({t.dims[0], t.dims[1]});
    j["op"] = to_json(t.op);
    j["min_eig"] = t.min_eig;
    j["pt_trace_norm"] = t.pt_trace_norm;
    j["trace"] = t.trace;
    j["ppt_prime_member"] = is_ppt_prime(t.op, t.dims).member;
    return j;
}

json to_json(const BoundReport& r) {
    json j;
    j["schema"] = 1;
    j["quantity"] = r.quantity;
    j["channel"] = r.channel;
    j["alpha"] = alpha_json(r.alpha);
    j["value"] = r.value_infinite ? json("inf") : number_or_inf(r.value);
    j["method"] = r.method;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["residual"] = r.residual;
    j["seed"] = r.seed;
    if (r.input_state) j["input_state"] = to_json(*r.input_state);
    if (r.tau) j["tau"] = to_json(*r.tau);
    return j;
}

json to_json(const HierarchyReport& h) {
    json j;
    j["schema"] = 1;
    j["channel"] = h.channel;
    j["coherent_info"] = h.coherent_info;
    j["rains_info"] = h.rains_info;
    json grid = json::array();
    for (const auto& [a, v] : h.renyi_grid) {
        json g;
        g["alpha"] = a;
        g["value"] = number_or_inf(v);
        grid.push_back(std::move(g));
    }
    j["renyi_grid"] = std::move(grid);
    j["l_grid"] = h.l_grid;
    if (h.two_copy_rate) j["two_copy_rate"] = *h.two_copy_rate;
    if (h.inf_l_value) j["inf_l_value"] = *h.inf_l_value;
    j["ic_le_rains"] = h.ic_le_rains;
    j["grid_monotone"] = h.grid_monotone;
    j["consistent"] = h.consistent;
    return j;
}

json to_json(const SuiteReport& s) {
    json j;
    j["schema"] = 1;
    j["suite"] = s.suite;
    j["seed"] = s.seed;
    j["samples"] = s.samples;
    json checks = json::array();
    for (const CheckResult& c : s.checks) {
        json cj;
        cj["name"] = c.name;
        cj["samples"] = c.samples;
        cj["violations"] = c.violations;
        cj["max_violation"] = number_or_inf(c.max_violation);
        cj["pass"] = c.pass;
        if (c.violations > 0) cj["counterexample"] = c.counterexample;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["pass"] = s.pass;
    return j;
}

json channel_to_json(const QuantumChannel& n) {
    json j;
    j["schema"] = 1;
    j["name"] = n.name();
    j["d_in"] = n.d_in();
    j["d_out"] = n.d_out();
    json kraus = json::array();
    for (const Matrix& k : n.kraus()) kraus.push_back(to_json(k));
    j["kraus"] = std::move(kraus);
    return j;
}

QuantumChannel channel_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("channel json: expected an object");
    for (const char* key : {"name", "d_in", "d_out", "kraus"})
        if (!j.contains(key)) throw std::runtime_error(std::string("channel json: missing field ") + key);
    const std::string name = j["name"].get<std::string>();
    const int d_in = j["d_in"].get<int>();
    const int d_out = j["d_out"].get<int>();
    if (!j["kraus"].is_array() || j["kraus"].empty())
        throw std::runtime_error("channel json: kraus must be a non-empty array");
    std::vector<Matrix> kraus;
    for (const json& kj : j["kraus"]) {
        Matrix k = matrix_from_json(kj);
        if (k.rows() != d_out || k.cols() != d_in)
            throw std::runtime_error("channel json: kraus shape disagrees with d_in/d_out");
        kraus.push_back(std::move(k));
    }
    try {
        return QuantumChannel(name, std::move(kraus));
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("channel json: ") + e.what());
    }
}

QuantumChannel load_channel_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error("channel file " + path + ": " + e.what());
    }
    return channel_from_json(j);
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out << ',';
        out << columns[c];
    }
    out << '\n';
    char buf[64];
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw std::invalid_argument("csv_table: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            std::snprintf(buf, sizeof buf, "%.12g", row[c]);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string decay_csv(const std::vector<DecayRow>& rows) {
    std::vector<std::vector<double>> data;
    data.reserve(rows.size());
    for (const DecayRow& r : rows)
        data.push_back({static_cast<double>(r.n), r.log_m, r.fidelity, r.bound, r.empirical_exponent});
    return csv_table({"n", "log_M", "fidelity", "bound", "empirical_exponent"}, data);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace qcap
