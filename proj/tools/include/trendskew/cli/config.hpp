#pragma once

#include "trendskew/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace trendskew::cli {

/// Invalid configuration. The message is anchored to a file and line.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Maps every JSON pointer in a document to the line where its key (or, for
/// array elements, its value) starts.
std::map<std::string, std::size_t> locate_json_lines(std::string_view text);

class ConfigNode;

/// A parsed JSON config file with line information for error reporting.
class ConfigDocument {
public:
    /// Throws ConfigError for unreadable files and JSON syntax errors.
    static ConfigDocument load(const std::filesystem::path& path);
    static ConfigDocument parse(std::string text, std::filesystem::path path);

    ConfigNode root() const;
    const std::filesystem::path& path() const noexcept { return path_; }
    /// Directory relative paths in the config are resolved against.
    std::filesystem::path base_dir() const;

    std::size_t line_of(const std::string& pointer) const;
    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;

private:
    std::filesystem::path path_;
    nlohmann::json json_;
    std::map<std::string, std::size_t> lines_;
};

/// Typed, located view of one JSON value.
class ConfigNode {
public:
    ConfigNode(const ConfigDocument& doc, const nlohmann::json& value, std::string pointer)
        : doc_(&doc), value_(&value), pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }
    const nlohmann::json& json() const noexcept { return *value_; }

    bool has(std::string_view key) const;
    ConfigNode at(std::string_view key) const;  // required member
    std::optional<ConfigNode> find(std::string_view key) const;
    std::vector<ConfigNode> elements() const;  // array elements

    /// Fails when the object holds a member not listed in `allowed`.
    void only_keys(std::initializer_list<std::string_view> allowed) const;

    double as_double() const;
    std::int64_t as_int() const;
    std::uint64_t as_u64() const;
    bool as_bool() const;
    std::string as_string() const;

    double get_double(std::string_view key, double fallback) const;
    std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
    bool get_bool(std::string_view key, bool fallback) const;
    std::string get_string(std::string_view key, std::string fallback) const;

    [[noreturn]] void fail(const std::string& message) const { doc_->fail(pointer_, message); }

private:
    const ConfigDocument* doc_;
    const nlohmann::json* value_;
    std::string pointer_;
};

}  // namespace trendskew::cli
