#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lassoda/bounds.hpp"
#include "lassoda/diagnostics.hpp"
#include "lassoda/error.hpp"
#include "lassoda/model.hpp"
#include "lassoda/oracle.hpp"
#include "lassoda/sampler.hpp"

namespace lassoda {

// All persisted floats use 17 significant digits, enough for exact
// double round-trips.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::probit: return "probit";
        case ModelKind::logistic: return "logistic";
        case ModelKind::hetero_gaussian: return "hetero_gaussian";
    }
    throw ParameterError("kind_name: unknown model kind");
}

inline ModelKind kind_from_name(const std::string& name) {
    if (name == "probit") return ModelKind::probit;
    if (name == "logistic") return ModelKind::logistic;
    if (name == "hetero_gaussian") return ModelKind::hetero_gaussian;
    throw ParameterError("unknown model kind '" + name +
                         "'; expected probit, logistic, or hetero_gaussian");
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot open for writing: " + path);
    return out;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open for reading: " + path);
    return in;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

inline double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("malformed number '" + s + "' in " + context);
    }
}

}  // namespace detail

// Dataset CSV: header y,x1,...,xp, one observation per row. Hyperparameters
// and the model kind travel in a JSON sidecar {kind, lambda, theta, gamma}.
inline void write_dataset(const Dataset& data, const std::string& csv_path,
                          const std::string& json_path) {
    data.validate();
    auto csv = detail::open_out(csv_path);
    csv << "y";
    for (int j = 1; j <= data.p(); ++j) csv << ",x" << j;
    csv << "\n";
    for (int i = 0; i < data.n(); ++i) {
        csv << format_double(data.y[i]);
        for (int j = 1; j <= data.p(); ++j) {
            csv << "," << format_double(data.design.rows(i, j));
        }
        csv << "\n";
    }
    auto js = detail::open_out(json_path);
    js << "{\n"
       << "  \"kind\": \"" << kind_name(data.kind) << "\",\n"
       << "  \"lambda\": " << format_double(data.hyper.lambda) << ",\n"
       << "  \"theta\": " << format_double(data.hyper.theta) << ",\n"
       << "  \"gamma\": "
       << (data.hyper.gamma ? format_double(*data.hyper.gamma) : std::string("null")) << "\n"
       << "}\n";
}

inline Dataset read_dataset(const std::string& csv_path, const std::string& json_path) {
    auto js = detail::open_in(json_path);
    nlohmann::json sidecar;
    try {
        js >> sidecar;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("malformed sidecar JSON " + json_path + ": " + e.what());
    }
    Dataset data;
    try {
        data.kind = kind_from_name(sidecar.at("kind").get<std::string>());
        data.hyper.lambda = sidecar.at("lambda").get<double>();
        data.hyper.theta = sidecar.at("theta").get<double>();
        if (sidecar.contains("gamma") && !sidecar["gamma"].is_null()) {
            data.hyper.gamma = sidecar["gamma"].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("sidecar JSON " + json_path + " missing fields: " + e.what());
    }

    auto csv = detail::open_in(csv_path);
    std::string line;
    if (!std::getline(csv, line)) throw ParameterError("empty dataset CSV: " + csv_path);
    auto header = detail::split_csv_line(line);
    if (header.empty() || header[0] != "y") {
        throw ParameterError("dataset CSV must start with header y,x1,...,xp: " + csv_path);
    }
    const int p = static_cast<int>(header.size()) - 1;
    if (p < 1) throw ParameterError("dataset CSV needs at least one covariate column");

    std::vector<double> ys;
    std::vector<double> xs;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (static_cast<int>(fields.size()) != p + 1) {
            throw ParameterError("dataset CSV row has wrong field count: " + csv_path);
        }
        ys.push_back(detail::parse_double(fields[0], csv_path));
        for (int j = 1; j <= p; ++j) {
            xs.push_back(detail::parse_double(fields[static_cast<std::size_t>(j)], csv_path));
        }
    }
    const int n = static_cast<int>(ys.size());
    if (n < 1) throw ParameterError("dataset CSV has no rows: " + csv_path);
    Eigen::MatrixXd x(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
            x(i, j) = xs[static_cast<std::size_t>(i) * p + j];
        }
    }
    data.design = DesignMatrix::from_covariates(x);
    data.y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);
    data.validate();
    return data;
}

// Sample CSV: header chain,iter,alpha,b1,...,bp.
inline void write_samples(const SampleStore& store, const std::string& path) {
    auto csv = detail::open_out(path);
    csv << "chain,iter,alpha";
    for (int j = 1; j <= store.p; ++j) csv << ",b" << j;
    csv << "\n";
    for (const auto& row : store.rows) {
        csv << row.chain << "," << row.iter << "," << format_double(row.alpha);
        for (int j = 0; j < store.p; ++j) csv << "," << format_double(row.beta[j]);
        csv << "\n";
    }
}

inline SampleStore read_samples(const std::string& path) {
    auto csv = detail::open_in(path);
    std::string line;
    if (!std::getline(csv, line)) throw ParameterError("empty samples CSV: " + path);
    auto header = detail::split_csv_line(line);
    if (header.size() < 4 || header[0] != "chain" || header[1] != "iter" || header[2] != "alpha") {
        throw ParameterError("samples CSV must start with header chain,iter,alpha,b1,...: " + path);
    }
    SampleStore store;
    store.p = static_cast<int>(header.size()) - 3;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ParameterError("samples CSV row has wrong field count: " + path);
        }
        SampleRow row;
        row.chain = static_cast<int>(detail::parse_double(fields[0], path));
        row.iter = static_cast<std::int64_t>(detail::parse_double(fields[1], path));
        row.alpha = detail::parse_double(fields[2], path);
        row.beta.resize(store.p);
        for (int j = 0; j < store.p; ++j) {
            row.beta[j] = detail::parse_double(fields[static_cast<std::size_t>(j) + 3], path);
        }
        store.rows.push_back(std::move(row));
    }
    return store;
}

inline SamplerConfig read_sampler_config(const std::string& path) {
    auto in = detail::open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("malformed config JSON " + path + ": " + e.what());
    }
    SamplerConfig config;
    try {
        config.iterations = j.at("iterations").get<std::int64_t>();
        config.burn_in = j.value("burn_in", std::int64_t{0});
        config.thin = j.value("thin", std::int64_t{1});
        config.chains = j.value("chains", 1);
        config.seed = j.value("seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("config JSON " + path + ": " + e.what());
    }
    config.validate();
    return config;
}

inline void write_bound_report(const BoundReport& report, const std::string& path) {
    auto out = detail::open_out(path);
    out << "{\n"
        << "  \"sigma_max_scaled\": " << format_double(report.sigma_max_scaled) << ",\n"
        << "  \"delta\": " << format_double(report.delta) << ",\n"
        << "  \"epsilon\": " << format_double(report.epsilon) << ",\n"
        << "  \"d\": " << format_double(report.d) << ",\n"
        << "  \"iso_lower\": " << format_double(report.iso_lower) << ",\n"
        << "  \"gap_lower\": " << format_double(report.gap_lower) << ",\n"
        << "  \"rho\": " << format_double(report.rho) << ",\n"
        << "  \"log_warmness\": " << format_double(report.log_warmness) << ",\n"
        << "  \"t_mix\": " << report.t_mix << ",\n"
        << "  \"c1\": " << format_double(report.c1) << ",\n"
        << "  \"m\": " << format_double(report.m) << ",\n"
        << "  \"m_prime\": " << format_double(report.m_prime) << ",\n"
        << "  \"m_double_prime\": " << format_double(report.m_double_prime) << "\n"
        << "}\n";
}

namespace detail {

inline void write_double_array(std::ofstream& out, const std::vector<double>& v) {
    out << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << format_double(v[i]);
    }
    out << "]";
}

}  // namespace detail

inline void write_diagnostics_report(const DiagnosticsReport& report, const std::string& path) {
    auto out = detail::open_out(path);
    out << "{\n  \"tv_to_oracle\": ";
    detail::write_double_array(out, report.tv_to_oracle);
    out << ",\n  \"ess\": ";
    detail::write_double_array(out, report.ess);
    out << ",\n  \"acf\": [";
    for (std::size_t k = 0; k < report.acf.size(); ++k) {
        if (k) out << ", ";
        detail::write_double_array(out, report.acf[k]);
    }
    out << "],\n  \"degenerate\": [";
    for (std::size_t k = 0; k < report.degenerate.size(); ++k) {
        if (k) out << ", ";
        out << (report.degenerate[k] ? "true" : "false");
    }
    out << "],\n  \"runtime_seconds\": " << format_double(report.runtime_seconds)
        << ",\n  \"iterations_used\": " << report.iterations_used
        << ",\n  \"bins\": " << report.bins << "\n}\n";
}

inline void write_oracle_summary(const OracleGrid& grid, const std::string& path) {
    auto out = detail::open_out(path);
    out << "{\n"
        << "  \"alpha_lo\": " << format_double(grid.alpha_lo) << ",\n"
        << "  \"alpha_hi\": " << format_double(grid.alpha_hi) << ",\n"
        << "  \"beta_lo\": " << format_double(grid.beta_lo) << ",\n"
        << "  \"beta_hi\": " << format_double(grid.beta_hi) << ",\n"
        << "  \"resolution\": " << grid.resolution << ",\n"
        << "  \"alpha_mean\": " << format_double(grid.alpha_mean()) << ",\n"
        << "  \"beta_mean\": " << format_double(grid.beta_mean()) << ",\n";
    Eigen::VectorXd am = grid.alpha_marginal();
    Eigen::VectorXd bm = grid.beta_marginal();
    std::vector<double> av(am.data(), am.data() + am.size());
    std::vector<double> bv(bm.data(), bm.data() + bm.size());
    out << "  \"alpha_marginal\": ";
    detail::write_double_array(out, av);
    out << ",\n  \"beta_marginal\": ";
    detail::write_double_array(out, bv);
    out << "\n}\n";
}

}  // namespace lassoda
