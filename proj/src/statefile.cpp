#include "lueq/statefile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lueq {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::ParseError, where + ": expected a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    return j;
}

void store(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write " + path);
    out << j.dump(1) << '\n';
}

json matrix_rows(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_rows(const json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty())
        throw Error(ErrorCode::ParseError, where + ": expected a list of rows");
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols = static_cast<Eigen::Index>(rows[0].size());
    ComplexMatrix m(n_rows, n_cols);
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols)
            throw Error(ErrorCode::ParseError, where + ": ragged rows");
        for (Eigen::Index j = 0; j < n_cols; ++j)
            m(i, j) = complex_from_json(row[static_cast<std::size_t>(j)],
                                        where + " row " + std::to_string(i));
    }
    return m;
}

}  // namespace

MultiState read_state(const std::string& path) {
    json j = load(path);
    if (!j.contains("dims") || !j.contains("kind") || !j.contains("data"))
        throw Error(ErrorCode::ParseError, path + ": missing dims, kind or data");

    MultiState s;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer())
            throw Error(ErrorCode::ParseError, path + ": dims must be integers");
        s.dims.dims.push_back(d.get<int>());
    }
    const std::string kind = j["kind"].get<std::string>();
    const long total = s.dims.total();
    if (kind == "pure") {
        s.kind = Kind::Pure;
        const json& data = j["data"];
        if (!data.is_array() || static_cast<long>(data.size()) != total)
            throw Error(ErrorCode::ParseError,
                        path + ": pure data must list " + std::to_string(total) + " amplitudes");
        s.data.resize(total, 1);
        for (long i = 0; i < total; ++i)
            s.data(i, 0) = complex_from_json(data[static_cast<std::size_t>(i)],
                                             path + " amplitude " + std::to_string(i));
    } else if (kind == "mixed") {
        s.kind = Kind::Mixed;
        s.data = matrix_from_rows(j["data"], path);
        if (s.data.rows() != total || s.data.cols() != total)
            throw Error(ErrorCode::ParseError, path + ": mixed data must be D x D");
    } else {
        throw Error(ErrorCode::ParseError, path + ": kind must be \"pure\" or \"mixed\"");
    }
    return s;
}

void write_state(const MultiState& s, const std::string& path, const std::string& name) {
    json j;
    j["dims"] = s.dims.dims;
    j["kind"] = s.is_pure() ? "pure" : "mixed";
    if (!name.empty()) j["name"] = name;
    if (s.is_pure()) {
        json data = json::array();
        for (Eigen::Index i = 0; i < s.data.rows(); ++i)
            data.push_back(complex_to_json(s.data(i, 0)));
        j["data"] = std::move(data);
    } else {
        j["data"] = matrix_rows(s.data);
    }
    store(j, path);
}

LocalUnitary read_unitary(const std::string& path, int n_parties) {
    json j = load(path);
    if (!j.contains("cut") || !j.contains("u_x") || !j.contains("u_y"))
        throw Error(ErrorCode::ParseError, path + ": missing cut, u_x or u_y");
    const json& cut = j["cut"];
    if (!cut.is_array() || cut.size() != 2)
        throw Error(ErrorCode::ParseError, path + ": cut must hold two party lists");
    std::vector<int> x;
    for (const auto& p : cut[0]) x.push_back(p.get<int>() - 1);
    LocalUnitary lu;
    lu.bipartition = Bipartition::from_x(x, n_parties);
    lu.u_x = matrix_from_rows(j["u_x"], path + " u_x");
    lu.u_y = matrix_from_rows(j["u_y"], path + " u_y");
    return lu;
}

void write_unitary(const LocalUnitary& lu, const std::string& path) {
    json j;
    json cut = json::array();
    json x = json::array(), y = json::array();
    for (int p : lu.bipartition.x_parties) x.push_back(p + 1);
    for (int p : lu.bipartition.y_parties) y.push_back(p + 1);
    cut.push_back(std::move(x));
    cut.push_back(std::move(y));
    j["cut"] = std::move(cut);
    j["u_x"] = matrix_rows(lu.u_x);
    j["u_y"] = matrix_rows(lu.u_y);
    store(j, path);
}

Bipartition parse_cut(const std::string& text, int n_parties) {
    auto parse_list = [](const std::string& part) {
        std::vector<int> out;
        std::stringstream ss(part);
        std::string token;
        while (std::getline(ss, token, ',')) {
            try {
                out.push_back(std::stoi(token) - 1);
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad party index '" + token + "'");
            }
        }
        return out;
    };
    // "1|2,3" gives both sides; "1" alone implies the complement as Y.
    const auto bar = text.find('|');
    Bipartition bp = Bipartition::from_x(
        parse_list(bar == std::string::npos ? text : text.substr(0, bar)), n_parties);
    if (bar != std::string::npos) {
        std::vector<int> y = parse_list(text.substr(bar + 1));
        std::sort(y.begin(), y.end());
        if (y != bp.y_parties)
            throw Error(ErrorCode::BadPartition, "cut sides do not partition the party set");
    }
    return bp;
}

}  // namespace lueq
