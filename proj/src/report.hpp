#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace charres {

/// Deterministic two-column plain-text report with an optional JSON
/// rendering.  Identical inputs must produce identical bytes; every number is
/// printed exactly.
class Report {
public:
    void echo(const std::string& command_line);
    void input(const std::string& path);  // records basename + content digest
    void section(const std::string& title);
    void kv(const std::string& key, const std::string& value);

    std::string text() const;
    std::string json() const;  // schema charres-report/1

private:
    struct Entry {
        enum class Kind { Echo, Input, Section, Kv } kind;
        std::string a;
        std::string b;
    };
    std::vector<Entry> entries_;
};

std::uint64_t fnv1a(const std::string& bytes);
std::string file_digest(const std::string& path);  // hex fnv1a of contents
std::string basename_of(const std::string& path);

}  // namespace charres
