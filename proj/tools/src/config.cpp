#include "trendskew/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace trendskew::cli {

namespace {

std::string escape_pointer_token(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

struct Frame {
    bool is_array = false;
    std::string pointer;
    std::size_t index = 0;
    bool expecting_key = true;
    std::string pending;  // pointer for the next value
};

}  // namespace

std::map<std::string, std::size_t> locate_json_lines(std::string_view text) {
    std::map<std::string, std::size_t> lines;
    std::vector<Frame> stack;
    std::size_t line = 1;
    std::string next_value = "";  // pointer of the value about to start
    bool value_expected = true;
    lines[""] = 1;

    auto begin_value = [&]() -> std::string {
        std::string ptr = next_value;
        if (!stack.empty() && stack.back().is_array) {
            lines.try_emplace(ptr, line);
        }
        value_expected = false;
        return ptr;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            continue;
        }
        if (c == '"') {
            std::string s;
            std::size_t j = i + 1;
            for (; j < text.size() && text[j] != '"'; ++j) {
                if (text[j] == '\\' && j + 1 < text.size()) {
                    ++j;
                }
                s += text[j];
            }
            const bool is_key = !stack.empty() && !stack.back().is_array && stack.back().expecting_key;
            if (is_key) {
                auto& f = stack.back();
                next_value = f.pointer + "/" + escape_pointer_token(s);
                lines.try_emplace(next_value, line);
                f.expecting_key = false;
                value_expected = true;
            } else if (value_expected) {
                begin_value();
            }
            i = j;
            continue;
        }
        switch (c) {
        case '{':
        case '[': {
            const std::string ptr = value_expected ? begin_value() : next_value;
            Frame f;
            f.is_array = c == '[';
            f.pointer = ptr;
            stack.push_back(f);
            if (f.is_array) {
                next_value = ptr + "/0";
                value_expected = true;
            }
            break;
        }
        case '}':
        case ']':
            if (!stack.empty()) {
                stack.pop_back();
            }
            value_expected = false;
            break;
        case ',':
            if (!stack.empty()) {
                auto& f = stack.back();
                if (f.is_array) {
                    ++f.index;
                    next_value = f.pointer + "/" + std::to_string(f.index);
                    value_expected = true;
                } else {
                    f.expecting_key = true;
                }
            }
            break;
        case ':':
            value_expected = true;
            break;
        default:
            if (value_expected) {
                begin_value();
            }
            break;
        }
    }
    return lines;
}

ConfigDocument ConfigDocument::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open config file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

ConfigDocument ConfigDocument::parse(std::string text, std::filesystem::path path) {
    ConfigDocument doc;
    doc.path_ = std::move(path);
    try {
        doc.json_ = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto offset = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(
                                  std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
        throw ConfigError(doc.path_.string() + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
    }
    doc.lines_ = locate_json_lines(text);
    return doc;
}

ConfigNode ConfigDocument::root() const { return ConfigNode(*this, json_, ""); }

std::filesystem::path ConfigDocument::base_dir() const {
    auto dir = path_.parent_path();
    return dir.empty() ? std::filesystem::path(".") : dir;
}

std::size_t ConfigDocument::line_of(const std::string& pointer) const {
    // Walk up to the nearest located ancestor (missing members report their parent).
    std::string p = pointer;
    while (true) {
        if (auto it = lines_.find(p); it != lines_.end()) {
            return it->second;
        }
        const auto slash = p.rfind('/');
        if (slash == std::string::npos) {
            return 1;
        }
        p.resize(slash);
    }
}

void ConfigDocument::fail(const std::string& pointer, const std::string& message) const {
    throw ConfigError(path_.string() + ":" + std::to_string(line_of(pointer)) + ": " +
                      (pointer.empty() ? std::string("/") : pointer) + ": " + message);
}

bool ConfigNode::has(std::string_view key) const {
    return value_->is_object() && value_->contains(key);
}

ConfigNode ConfigNode::at(std::string_view key) const {
    if (!value_->is_object()) {
        fail("expected an object");
    }
    const auto it = value_->find(key);
    if (it == value_->end()) {
        fail("missing required key '" + std::string(key) + "'");
    }
    return ConfigNode(*doc_, *it, pointer_ + "/" + escape_pointer_token(key));
}

std::optional<ConfigNode> ConfigNode::find(std::string_view key) const {
    if (!has(key)) {
        return std::nullopt;
    }
    return at(key);
}

std::vector<ConfigNode> ConfigNode::elements() const {
    if (!value_->is_array()) {
        fail("expected an array");
    }
    std::vector<ConfigNode> out;
    for (std::size_t i = 0; i < value_->size(); ++i) {
        out.emplace_back(*doc_, (*value_)[i], pointer_ + "/" + std::to_string(i));
    }
    return out;
}

void ConfigNode::only_keys(std::initializer_list<std::string_view> allowed) const {
    if (!value_->is_object()) {
        fail("expected an object");
    }
    for (const auto& [key, _] : value_->items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            doc_->fail(pointer_ + "/" + escape_pointer_token(key), "unknown key '" + key + "'");
        }
    }
}

double ConfigNode::as_double() const {
    if (!value_->is_number()) {
        fail("expected a number");
    }
    const double v = value_->get<double>();
    if (!std::isfinite(v)) {
        fail("expected a finite number");
    }
    return v;
}

std::int64_t ConfigNode::as_int() const {
    if (value_->is_number_integer()) {
        return value_->get<std::int64_t>();
    }
    if (value_->is_number_float()) {
        const double v = value_->get<double>();
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
            return static_cast<std::int64_t>(v);
        }
    }
    fail("expected an integer");
}

std::uint64_t ConfigNode::as_u64() const {
    if (value_->is_number_unsigned()) {
        return value_->get<std::uint64_t>();
    }
    const auto v = as_int();
    if (v < 0) {
        fail("expected a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
}

bool ConfigNode::as_bool() const {
    if (!value_->is_boolean()) {
        fail("expected true or false");
    }
    return value_->get<bool>();
}

std::string ConfigNode::as_string() const {
    if (!value_->is_string()) {
        fail("expected a string");
    }
    return value_->get<std::string>();
}

double ConfigNode::get_double(std::string_view key, double fallback) const {
    const auto n = find(key);
    return n ? n->as_double() : fallback;
}

std::int64_t ConfigNode::get_int(std::string_view key, std::int64_t fallback) const {
    const auto n = find(key);
    return n ? n->as_int() : fallback;
}

bool ConfigNode::get_bool(std::string_view key, bool fallback) const {
    const auto n = find(key);
    return n ? n->as_bool() : fallback;
}

std::string ConfigNode::get_string(std::string_view key, std::string fallback) const {
    const auto n = find(key);
    return n ? n->as_string() : fallback;
}

}  // namespace trendskew::cli
