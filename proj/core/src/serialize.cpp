#include "isospec/serialize.hpp"

#include <fstream>

#include "isospec/common.hpp"

namespace isospec {
namespace {

nlohmann::ordered_json real_part_rows(const CMatrix& a, bool imag) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            row.push_back(imag ? a(i, k).imag() : a(i, k).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

void parse_part(const nlohmann::json& rows, CMatrix& a, bool imag, const char* key) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != a.rows())
        throw ConfigError(std::string("matrix_from_json: bad \"") + key + "\" row count");
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != a.cols())
            throw ConfigError(std::string("matrix_from_json: bad \"") + key + "\" column count");
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (!row[k].is_number())
                throw ConfigError(std::string("matrix_from_json: non-numeric entry in \"") + key + "\"");
            const double v = row[k].get<double>();
            if (imag)
                a(i, k) = Complex(a(i, k).real(), v);
            else
                a(i, k) = Complex(v, a(i, k).imag());
        }
    }
}

} // namespace

nlohmann::ordered_json matrix_to_json(const CMatrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("matrix_to_json: matrix must be square");
    nlohmann::ordered_json j;
    j["dim"] = a.rows();
    j["re"] = real_part_rows(a, false);
    j["im"] = real_part_rows(a, true);
    return j;
}

CMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw ConfigError("matrix_from_json: expected object with dim/re/im");
    if (!j["dim"].is_number_integer())
        throw ConfigError("matrix_from_json: \"dim\" must be an integer");
    const auto dim = j["dim"].get<Eigen::Index>();
    if (dim < 1 || dim > 4096) throw ConfigError("matrix_from_json: \"dim\" out of range");
    CMatrix a = CMatrix::Zero(dim, dim);
    parse_part(j["re"], a, false, "re");
    parse_part(j["im"], a, true, "im");
    return a;
}

nlohmann::ordered_json jmap_to_json(const JMapPair& pair) {
    nlohmann::ordered_json j;
    j["m"] = pair.m();
    j["jZ1"] = matrix_to_json(pair.jZ1());
    j["jZ2"] = matrix_to_json(pair.jZ2());
    return j;
}

JMapPair jmap_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("jZ1") || !j.contains("jZ2"))
        throw ConfigError("jmap_from_json: expected object with m/jZ1/jZ2");
    if (!j["m"].is_number_integer()) throw ConfigError("jmap_from_json: \"m\" must be an integer");
    const int m = j["m"].get<int>();
    const CMatrix a = matrix_from_json(j["jZ1"]);
    const CMatrix b = matrix_from_json(j["jZ2"]);
    if (a.rows() != m || b.rows() != m)
        throw ConfigError("jmap_from_json: matrix dimensions disagree with \"m\"");
    try {
        return JMapPair(a, b);
    } catch (const InvalidArgument& e) {
        // Surface algebra violations (not skew-hermitian, trace, size) as
        // configuration errors: the file is the thing at fault.
        throw ConfigError(std::string("jmap_from_json: ") + e.what());
    }
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw Error("write failed: " + path);
}

} // namespace isospec
