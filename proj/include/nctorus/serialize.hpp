#pragma once
//
// JSON documents for theta, elements and kernels, and the binary kernel dump
// (header: "NCK1", int32 d, int32 N, uint32 reserved = 0; then little-endian
// (re, im) double pairs, rows over the first leg in enumerate order).
//

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cocycle.hpp"
#include "errors.hpp"
#include "kernels.hpp"
#include "torus_element.hpp"

namespace nctorus {

using json = nlohmann::json;

inline ThetaMatrix theta_from_json(const json& doc)
{
    if (!doc.is_object())
        throw ValidationError("theta document must be a JSON object");
    if (!doc.contains("d") || !doc["d"].is_number_integer())
        throw ValidationError("theta document: \"d\" must be an integer");
    const auto d = doc["d"].get<std::int64_t>();
    if (d < 2)
        throw ValidationError("theta document: d must be >= 2, got " + std::to_string(d));
    if (!doc.contains("theta") || !doc["theta"].is_array())
        throw ValidationError("theta document: \"theta\" must be an array of rows");
    const auto& rows = doc["theta"];
    if (rows.size() != std::size_t(d))
        throw ValidationError("theta document: expected " + std::to_string(d) + " rows, got "
                              + std::to_string(rows.size()));
    std::vector<std::vector<double>> m(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d)));
    for (std::size_t j = 0; j < std::size_t(d); ++j) {
        if (!rows[j].is_array() || rows[j].size() != std::size_t(d))
            throw ValidationError("theta[" + std::to_string(j) + "] must be an array of "
                                  + std::to_string(d) + " numbers");
        for (std::size_t k = 0; k < std::size_t(d); ++k) {
            if (!rows[j][k].is_number())
                throw ValidationError("theta[" + std::to_string(j) + "][" + std::to_string(k)
                                      + "] is not a number");
            m[j][k] = rows[j][k].get<double>();
        }
    }
    return ThetaMatrix(std::move(m));
}

inline json theta_to_json(const ThetaMatrix& theta)
{
    return {{"d", theta.dim()}, {"theta", theta.rows()}};
}

namespace detail {

inline json complex_pair(cplx c) { return json::array({c.real(), c.imag()}); }

inline cplx complex_from_json(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(where + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline LatticeBox box_from_json(const json& doc, const ReducedTheta& theta)
{
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("N"))
        throw ValidationError("document must carry \"d\" and \"N\"");
    const auto d = doc["d"].get<std::int64_t>();
    const auto n = doc["N"].get<std::int64_t>();
    if (d != std::int64_t(theta.dim()))
        throw ValidationError("document d=" + std::to_string(d) + " does not match theta dimension "
                              + std::to_string(theta.dim()));
    if (n < 0)
        throw ValidationError("document N must be >= 0");
    return LatticeBox(std::size_t(d), int(n));
}

} // namespace detail

inline json element_to_json(const TorusElement& x)
{
    json coeffs = json::array();
    for (const cplx& c : x.coeffs())
        coeffs.push_back(detail::complex_pair(c));
    return {{"d", x.dim()}, {"N", x.box().radius()}, {"coeffs", std::move(coeffs)}};
}

inline TorusElement element_from_json(const json& doc, const ReducedTheta& theta)
{
    const LatticeBox box = detail::box_from_json(doc, theta);
    const auto& arr = doc.at("coeffs");
    if (!arr.is_array() || arr.size() != box.cardinality())
        throw ValidationError("\"coeffs\" must hold " + std::to_string(box.cardinality()) + " pairs");
    std::vector<cplx> c(box.cardinality());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = detail::complex_from_json(arr[i], "coeffs[" + std::to_string(i) + "]");
    return TorusElement(theta, box, std::move(c));
}

inline json kernel_to_json(const NCKernel& k)
{
    if (!k.is_square())
        throw ValidationError("kernel serialization requires box1 == box2");
    json rows = json::array();
    for (Eigen::Index i = 0; i < k.coeffs().rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < k.coeffs().cols(); ++j)
            row.push_back(detail::complex_pair(k.coeffs()(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"d", k.dim()}, {"N", k.box1().radius()}, {"coeffs", std::move(rows)}};
}

inline NCKernel kernel_from_json(const json& doc, const ReducedTheta& theta)
{
    const LatticeBox box = detail::box_from_json(doc, theta);
    const auto& rows = doc.at("coeffs");
    const std::size_t n = box.cardinality();
    if (!rows.is_array() || rows.size() != n)
        throw ValidationError("kernel \"coeffs\" must have " + std::to_string(n) + " rows");
    NCKernel k(theta, box);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw ValidationError("kernel coeffs[" + std::to_string(i) + "] must have "
                                  + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j)
            k.coeffs()(Eigen::Index(i), Eigen::Index(j)) = detail::complex_from_json(
                rows[i][j], "coeffs[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return k;
}

namespace detail {

template <typename T>
void put_le(std::ostream& os, T value)
{
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    os.write(bytes.data(), sizeof(T));
}

template <typename T>
T get_le(std::istream& is)
{
    std::array<char, sizeof(T)> bytes;
    if (!is.read(bytes.data(), sizeof(T)))
        throw ValidationError("binary kernel: unexpected end of stream");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace detail

inline constexpr char kernel_magic[4] = {'N', 'C', 'K', '1'};

inline void write_kernel_binary(std::ostream& os, const NCKernel& k)
{
    if (!k.is_square())
        throw ValidationError("binary kernel dump requires box1 == box2");
    os.write(kernel_magic, 4);
    detail::put_le<std::int32_t>(os, std::int32_t(k.dim()));
    detail::put_le<std::int32_t>(os, std::int32_t(k.box1().radius()));
    detail::put_le<std::uint32_t>(os, 0);
    for (Eigen::Index i = 0; i < k.coeffs().rows(); ++i)
        for (Eigen::Index j = 0; j < k.coeffs().cols(); ++j) {
            detail::put_le<double>(os, k.coeffs()(i, j).real());
            detail::put_le<double>(os, k.coeffs()(i, j).imag());
        }
}

inline NCKernel read_kernel_binary(std::istream& is, const ReducedTheta& theta)
{
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kernel_magic, 4) != 0)
        throw ValidationError("binary kernel: bad magic, expected \"NCK1\"");
    const auto d = detail::get_le<std::int32_t>(is);
    const auto n = detail::get_le<std::int32_t>(is);
    (void)detail::get_le<std::uint32_t>(is);
    if (d != std::int32_t(theta.dim()))
        throw ValidationError("binary kernel: d=" + std::to_string(d) + " does not match theta");
    if (n < 0)
        throw ValidationError("binary kernel: negative N");
    NCKernel k(theta, LatticeBox(std::size_t(d), n));
    for (Eigen::Index i = 0; i < k.coeffs().rows(); ++i)
        for (Eigen::Index j = 0; j < k.coeffs().cols(); ++j) {
            const double re = detail::get_le<double>(is);
            const double im = detail::get_le<double>(is);
            k.coeffs()(i, j) = {re, im};
        }
    return k;
}

} // namespace nctorus
