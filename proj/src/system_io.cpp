#include "fracstab/system_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fracstab/errors.hpp"

namespace fracstab {

namespace {

using nlohmann::json;

int line_of_byte(const std::string& doc, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < doc.size(); ++i) {
        if (doc[i] == '\n') {
            ++line;
        }
    }
    return line;
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ValidationError(path + ": must be a number");
    }
    return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) {
        throw ValidationError(path + ": must be a nonnegative integer");
    }
    return j.get<std::size_t>();
}

std::vector<double> get_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(path + ": must be a nonempty array of numbers");
    }
    std::vector<double> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::ostringstream os;
        os << path << "[" << i << "]";
        v.push_back(get_number(j[i], os.str()));
    }
    return v;
}

Mat get_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(path + ": must be a nonempty array of rows");
    }
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    std::vector<double> entries;
    for (std::size_t i = 0; i < rows; ++i) {
        std::ostringstream os;
        os << path << "[" << i << "]";
        const std::vector<double> row = get_vector(j[i], os.str());
        if (i == 0) {
            cols = row.size();
            entries.reserve(rows * cols);
        } else if (row.size() != cols) {
            throw ValidationError(os.str() + ": ragged matrix row");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    try {
        return Mat(rows, cols, std::move(entries));
    } catch (const Error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

const json& require(const json& j, const char* key, const std::string& path = {}) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError((path.empty() ? std::string(key) : path) +
                              ": missing required field");
    }
    return *it;
}

NonlinDescriptor parse_nonlinearity(const json& j) {
    if (!j.is_object()) {
        throw ValidationError("nonlinearity: must be an object");
    }
    const json& kind_j = require(j, "kind", "nonlinearity.kind");
    if (!kind_j.is_string()) {
        throw ValidationError("nonlinearity.kind: must be a string");
    }
    const std::string kind = kind_j.get<std::string>();
    if (kind == "zero") {
        return NonlinDescriptor::zero();
    }
    if (kind == "tanh") {
        return NonlinDescriptor::tanh_scaled(
            get_vector(require(j, "scale", "nonlinearity.scale"), "nonlinearity.scale"));
    }
    if (kind == "sin_plus_offset") {
        auto scale = get_vector(require(j, "scale", "nonlinearity.scale"), "nonlinearity.scale");
        auto offset = get_vector(require(j, "offset", "nonlinearity.offset"), "nonlinearity.offset");
        if (scale.size() != offset.size()) {
            throw ValidationError(
                "nonlinearity.offset: size must match nonlinearity.scale");
        }
        return NonlinDescriptor::sin_plus_offset(std::move(scale),
                                                 std::move(offset));
    }
    if (kind == "linear") {
        return NonlinDescriptor::linear(
            get_matrix(require(j, "matrix", "nonlinearity.matrix"), "nonlinearity.matrix"));
    }
    throw ValidationError("nonlinearity.kind: unknown kind \"" + kind +
                          "\" (want zero|tanh|sin_plus_offset|linear)");
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) {
            row.push_back(m.at(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

SystemSpec parse_system(const std::string& doc) {
    json j;
    try {
        j = json::parse(doc);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), line_of_byte(doc, e.byte));
    }
    if (!j.is_object()) {
        throw ValidationError("document: must be a JSON object");
    }

    SystemSpec sys;
    sys.q = get_number(require(j, "q"), "q");
    sys.n = get_count(require(j, "n"), "n");
    sys.p = get_count(require(j, "p"), "p");
    sys.a0 = get_matrix(require(j, "A0"), "A0");
    sys.b0 = get_matrix(require(j, "B0"), "B0");

    const json& delays = require(j, "delays");
    if (!delays.is_array()) {
        throw ValidationError("delays: must be an array");
    }
    for (std::size_t i = 0; i < delays.size(); ++i) {
        std::ostringstream os;
        os << "delays[" << i << "]";
        const json& d = delays[i];
        if (!d.is_object()) {
            throw ValidationError(os.str() + ": must be an object");
        }
        sys.taus.push_back(get_number(require(d, "tau", os.str() + ".tau"), os.str() + ".tau"));
        sys.a_delays.push_back(get_matrix(require(d, "A", os.str() + ".A"), os.str() + ".A"));
    }

    sys.nonlinearity = parse_nonlinearity(require(j, "nonlinearity"));

    if (auto it = j.find("name"); it != j.end() && it->is_string()) {
        sys.name = it->get<std::string>();
    }
    if (auto it = j.find("description"); it != j.end() && it->is_string()) {
        sys.description = it->get<std::string>();
    }

    sys.validate();
    return sys;
}

SystemSpec load_system(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) {
        throw IoError("load_system: cannot open " + file.string());
    }
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_system(buf.str());
}

std::string serialize_system(const SystemSpec& sys) {
    json j;
    j["q"] = sys.q;
    j["n"] = sys.n;
    j["p"] = sys.p;
    j["A0"] = matrix_to_json(sys.a0);
    j["B0"] = matrix_to_json(sys.b0);
    json delays = json::array();
    for (std::size_t i = 0; i < sys.p; ++i) {
        json d;
        d["tau"] = sys.taus[i];
        d["A"] = matrix_to_json(sys.a_delays[i]);
        delays.push_back(std::move(d));
    }
    j["delays"] = std::move(delays);

    json nl;
    switch (sys.nonlinearity.kind) {
        case NonlinDescriptor::Kind::Zero:
            nl["kind"] = "zero";
            break;
        case NonlinDescriptor::Kind::Tanh:
            nl["kind"] = "tanh";
            nl["scale"] = sys.nonlinearity.scale;
            break;
        case NonlinDescriptor::Kind::SinPlusOffset:
            nl["kind"] = "sin_plus_offset";
            nl["scale"] = sys.nonlinearity.scale;
            nl["offset"] = sys.nonlinearity.offset;
            break;
        case NonlinDescriptor::Kind::Linear:
            nl["kind"] = "linear";
            nl["matrix"] = matrix_to_json(sys.nonlinearity.matrix);
            break;
    }
    j["nonlinearity"] = std::move(nl);

    if (!sys.name.empty()) {
        j["name"] = sys.name;
    }
    if (!sys.description.empty()) {
        j["description"] = sys.description;
    }
    return j.dump(2) + "\n";
}

}  // namespace fracstab
