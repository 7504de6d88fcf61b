#include "fidmom/io.hpp"

#include <stdexcept>

namespace fidmom {

using nlohmann::json;

json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (Index r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < M.cols(); ++c)
            row.push_back(json::array({M(r, c).real(), M(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix: expected a nonempty array of rows");
    const auto rows = static_cast<Index>(j.size());
    const auto& first = j.at(0);
    if (!first.is_array() || first.empty())
        throw std::invalid_argument("matrix: each row must be a nonempty array");
    const auto cols = static_cast<Index>(first.size());
    Matrix M(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw std::invalid_argument("matrix: ragged rows");
        for (Index c = 0; c < cols; ++c) {
            const auto& entry = row.at(static_cast<std::size_t>(c));
            if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
                !entry.at(1).is_number())
                throw std::invalid_argument("matrix: entries must be [re, im] pairs");
            M(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return M;
}

ChannelSpec channel_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("channel: expected a JSON object");
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        throw std::invalid_argument("channel: missing integer field \"dim\"");
    const auto d = j.at("dim").get<Index>();
    if (d < 2) throw std::invalid_argument("channel: dim must be >= 2");

    ChannelSpec spec;
    if (j.contains("kraus")) {
        const auto& list = j.at("kraus");
        if (!list.is_array() || list.empty())
            throw std::invalid_argument("channel: \"kraus\" must be a nonempty array");
        spec.channel.d = d;
        for (const auto& mj : list) {
            Matrix K = matrix_from_json(mj);
            if (K.rows() != d || K.cols() != d)
                throw std::invalid_argument("channel: Kraus operator is not dim x dim");
            spec.channel.kraus.push_back(std::move(K));
        }
    } else if (j.contains("chi")) {
        if (j.contains("basis") && j.at("basis") != "gellmann")
            throw std::invalid_argument("channel: only the \"gellmann\" basis is supported");
        Matrix chi = matrix_from_json(j.at("chi"));
        if (chi.rows() != d * d || chi.cols() != d * d)
            throw std::invalid_argument("channel: chi matrix is not dim^2 x dim^2");
        spec.channel = chi_to_kraus({d, &hermitian_basis(d), std::move(chi)});
    } else {
        throw std::invalid_argument("channel: need a \"kraus\" or \"chi\" field");
    }

    if (j.contains("ideal_unitary")) {
        Matrix U = matrix_from_json(j.at("ideal_unitary"));
        if (U.rows() != d || U.cols() != d)
            throw std::invalid_argument("channel: ideal unitary is not dim x dim");
        spec.ideal = std::move(U);
    }
    return spec;
}

json channel_to_json(const KrausChannel& C) {
    json out;
    out["dim"] = C.d;
    json list = json::array();
    for (const auto& K : C.kraus) list.push_back(matrix_to_json(K));
    out["kraus"] = std::move(list);
    return out;
}

KrausChannel lambda_of(const ChannelSpec& spec) {
    if (!spec.ideal) return spec.channel;
    return deviation_channel(spec.channel, *spec.ideal);
}

}  // namespace fidmom
