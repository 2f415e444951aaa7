// output.hpp: Deterministic CSV tables, content hashes and run metadata

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace htc::app {

/// Fixed 12-significant-digit scientific notation, '.' separator; -0 is written as 0.
std::string format_number(double v);

/// Header-bearing CSV built column by column and written with LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(const std::vector<double>& values);
    std::size_t rows() const { return rows_; }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::string body_;
    std::size_t rows_{0};
};

/// Git blob object id: SHA-1 over "blob <size>\0" followed by the content, in hex.
std::string git_blob_sha1(const std::string& content);

/// Collects the files of one run and writes them, plus meta.json, into a directory.
class OutputSet {
public:
    OutputSet(std::filesystem::path dir, nlohmann::json canonical_config);

    void add(const std::string& name, std::string content);
    void add_metadata(const std::string& key, nlohmann::json value);
    void add_warning(const std::string& text);

    const nlohmann::json& metadata() const { return meta_; }
    std::string config_hash() const { return config_hash_; }

    /// Writes every file and meta.json; returns the paths written.
    std::vector<std::filesystem::path> write() const;

private:
    std::filesystem::path dir_;
    std::string config_hash_;
    nlohmann::json meta_;
    std::vector<std::pair<std::string, std::string>> files_;
};

} // namespace htc::app
