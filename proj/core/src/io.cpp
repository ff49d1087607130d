// Copyright 2026 The sfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sfcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sfcorr::io {

namespace {

[[noreturn]] void parse_fail(const std::string &message) {
    fail(ErrorCode::Parse, message);
}

std::pair<size_t, size_t> line_column(std::string_view text, size_t byte) {
    size_t line = 1;
    size_t column = 1;
    for (size_t i = 0; i < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            column = 1;
        } else {
            column++;
        }
    }
    return {line, column};
}

double finite_number(const Json &j, const char *what) {
    if (!j.is_number()) {
        parse_fail(std::string(what) + " must be a number");
    }
    double v = j.get<double>();
    if (!std::isfinite(v)) {
        parse_fail(std::string(what) + " must be finite");
    }
    return v;
}

int read_dim(const Json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("data")) {
        parse_fail("expected an object with \"dim\" and \"data\"");
    }
    const Json &dim = j.at("dim");
    if (!dim.is_number_integer() || dim.get<long long>() < 1 || dim.get<long long>() > 4096) {
        parse_fail("\"dim\" must be a positive integer");
    }
    return static_cast<int>(dim.get<long long>());
}

std::vector<Complex> read_entries(const Json &data, size_t expected) {
    if (!data.is_array()) {
        parse_fail("\"data\" must be an array");
    }
    if (data.size() != expected) {
        parse_fail("\"data\" has " + std::to_string(data.size()) + " entries, expected " + std::to_string(expected));
    }
    std::vector<Complex> out;
    out.reserve(expected);
    for (const auto &entry : data) {
        if (!entry.is_array() || entry.size() != 2) {
            parse_fail("each entry must be a [re, im] pair");
        }
        out.emplace_back(finite_number(entry[0], "real part"), finite_number(entry[1], "imaginary part"));
    }
    return out;
}

Json complex_array(const Complex *begin, size_t count) {
    Json data = Json::array();
    for (size_t i = 0; i < count; i++) {
        data.push_back(Json::array({begin[i].real(), begin[i].imag()}));
    }
    return data;
}

template <typename T>
Json optional_value(const std::optional<T> &v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, column] = line_column(text, byte);
        std::string what = e.what();
        auto pos = what.find("parse error");
        parse_fail(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                   (pos == std::string::npos ? what : what.substr(pos)));
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        parse_fail("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str(), path);
}

ComplexMatrix matrix_from_json(const Json &j) {
    const int d = read_dim(j);
    auto entries = read_entries(j.at("data"), static_cast<size_t>(d) * static_cast<size_t>(d));
    return ComplexMatrix::from_row_major(d, entries);
}

PureState state_from_json(const Json &j) {
    const int d = read_dim(j);
    auto entries = read_entries(j.at("data"), static_cast<size_t>(d));
    Vector v(d);
    for (int i = 0; i < d; i++) {
        v(i) = entries[static_cast<size_t>(i)];
    }
    return PureState(std::move(v));
}

EnsembleSpec ensemble_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        parse_fail("ensemble must be an object with \"kind\"");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "haar") {
        if (!j.contains("n") || !j.at("n").is_number_integer()) {
            parse_fail("Haar ensemble needs an integer \"n\"");
        }
        return EnsembleSpec::haar(j.at("n").get<std::int64_t>());
    }
    if (kind == "user") {
        if (!j.contains("states") || !j.at("states").is_array()) {
            parse_fail("user ensemble needs a \"states\" array");
        }
        std::vector<PureState> states;
        for (const auto &s : j.at("states")) {
            states.push_back(state_from_json(s));
        }
        if (j.contains("n") && (!j.at("n").is_number_integer() ||
                                j.at("n").get<std::int64_t>() != static_cast<std::int64_t>(states.size()))) {
            parse_fail("\"n\" must equal the number of listed states");
        }
        return EnsembleSpec::user(std::move(states));
    }
    parse_fail("unknown ensemble kind \"" + kind + "\"");
}

Json to_json(const ComplexMatrix &m) {
    Matrix row_major = m.mat().transpose();
    return Json{{"dim", m.dim()}, {"data", complex_array(row_major.data(), static_cast<size_t>(row_major.size()))}};
}

Json to_json(const PureState &psi) {
    return Json{{"dim", psi.dim()}, {"data", complex_array(psi.vec().data(), static_cast<size_t>(psi.dim()))}};
}

Json to_json(const CorrelationReport &r) {
    return Json{
        {"mean1", r.mean1},
        {"mean2", r.mean2},
        {"var1", r.var1},
        {"var2", r.var2},
        {"cov", r.cov},
        {"pcc", r.pcc},
        {"method", std::string(to_string(r.method))},
        {"stderr_pcc", optional_value(r.stderr_pcc)},
        {"n_samples", optional_value(r.n_samples)},
    };
}

Json to_json(const ContrastReport &r) {
    Json curve = Json::array();
    for (const auto &[k, v] : r.curve) {
        curve.push_back(Json::array({k, v}));
    }
    return Json{{"kappa_star", r.kappa_star}, {"floor", r.floor}, {"curve", std::move(curve)}};
}

Json to_json(const echo::ShortTimeReport &r) {
    Json records = Json::array();
    for (const auto &rec : r.records) {
        Json row{{"t", rec.t}, {"pcc_exact", rec.pcc_exact}, {"pcc_variance_limit", rec.pcc_variance_limit},
                 {"gap", rec.gap}};
        if (rec.stderr_pcc_exact) {
            row["stderr_pcc_exact"] = *rec.stderr_pcc_exact;
        }
        if (rec.stderr_variance_limit) {
            row["stderr_variance_limit"] = *rec.stderr_variance_limit;
        }
        records.push_back(std::move(row));
    }
    return Json{{"records", std::move(records)}, {"dims", r.dims}};
}

Json to_json(const echo::AffineFit &fit) {
    return Json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"residual_rms", fit.residual_rms},
                {"negative_slope_feasible", fit.negative_slope_feasible}};
}

std::string format_double(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, result.ptr);
}

void write_fringe_csv(std::ostream &out, const std::vector<qubit::FringeRow> &rows) {
    out << "polar,azimuth,x,y,z,fidelity\n";
    for (const auto &r : rows) {
        out << format_double(r.polar) << ',' << format_double(r.azimuth) << ',' << format_double(r.x) << ','
            << format_double(r.y) << ',' << format_double(r.z) << ',' << format_double(r.fidelity) << '\n';
    }
}

void write_sweep_csv(std::ostream &out, const std::vector<std::pair<double, double>> &rows) {
    out << "delta,pcc\n";
    for (const auto &[delta, pcc] : rows) {
        out << format_double(delta) << ',' << format_double(pcc) << '\n';
    }
}

}  // namespace sfcorr::io
