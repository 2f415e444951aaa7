// output.cpp: Deterministic CSV tables, content hashes and run metadata

#include "htc/app/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <openssl/evp.h>

#include "htc/error.hpp"

namespace htc::app {

std::string format_number(double v)
{
    if (v == 0.0) {
        v = 0.0;
    }
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& values)
{
    if (values.size() != header_.size()) {
        throw ParamError("csv row width does not match the header");
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) {
            body_ += ',';
        }
        body_ += format_number(values[k]);
    }
    body_ += '\n';
    ++rows_;
}

std::string CsvTable::str() const
{
    std::string out;
    for (std::size_t k = 0; k < header_.size(); ++k) {
        if (k) {
            out += ',';
        }
        out += header_[k];
    }
    out += '\n';
    return out + body_;
}

std::string git_blob_sha1(const std::string& content)
{
    const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(blob.data(), blob.size(), digest, &length, EVP_sha1(), nullptr) != 1) {
        throw NumericalError("SHA-1 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < length; ++k) {
        const unsigned char b = digest[k];
        out += hex[b >> 4];
        out += hex[b & 15];
    }
    return out;
}

OutputSet::OutputSet(std::filesystem::path dir, nlohmann::json canonical_config)
    : dir_(std::move(dir)), config_hash_(git_blob_sha1(canonical_config.dump()))
{
    meta_["config"] = std::move(canonical_config);
    meta_["config_hash"] = config_hash_;
    meta_["files"] = nlohmann::json::object();
    meta_["warnings"] = nlohmann::json::array();
}

void OutputSet::add(const std::string& name, std::string content)
{
    meta_["files"][name] = {{"sha1", git_blob_sha1(content)}, {"config_hash", config_hash_}};
    files_.emplace_back(name, std::move(content));
}

void OutputSet::add_metadata(const std::string& key, nlohmann::json value) { meta_[key] = std::move(value); }

void OutputSet::add_warning(const std::string& text) { meta_["warnings"].push_back(text); }

std::vector<std::filesystem::path> OutputSet::write() const
{
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw ParamError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& name, const std::string& content) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) {
            throw ParamError("cannot write " + path.string());
        }
        written.push_back(path);
    };
    for (const auto& [name, content] : files_) {
        put(name, content);
    }
    put("meta.json", meta_.dump(2) + "\n");
    return written;
}

} // namespace htc::app
