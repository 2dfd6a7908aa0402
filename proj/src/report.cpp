#include "report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "exactnum.hpp"

namespace charres {

void Report::echo(const std::string& command_line) {
    entries_.push_back({Entry::Kind::Echo, command_line, ""});
}

void Report::input(const std::string& path) {
    entries_.push_back({Entry::Kind::Input, basename_of(path), file_digest(path)});
}

void Report::section(const std::string& title) {
    entries_.push_back({Entry::Kind::Section, title, ""});
}

void Report::kv(const std::string& key, const std::string& value) {
    entries_.push_back({Entry::Kind::Kv, key, value});
}

std::string Report::text() const {
    std::ostringstream os;
    for (const auto& e : entries_) {
        switch (e.kind) {
            case Entry::Kind::Echo: os << "# " << e.a << "\n"; break;
            case Entry::Kind::Input: os << "# input " << e.a << " fnv1a=" << e.b << "\n"; break;
            case Entry::Kind::Section: os << "[" << e.a << "]\n"; break;
            case Entry::Kind::Kv: {
                os << "  " << e.a;
                if (e.a.size() < 18) os << std::string(18 - e.a.size(), ' ');
                os << " " << e.b << "\n";
                break;
            }
        }
    }
    return os.str();
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["schema"] = "charres-report/1";
    j["inputs"] = nlohmann::ordered_json::array();
    j["body"] = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
        switch (e.kind) {
            case Entry::Kind::Echo: j["command"] = e.a; break;
            case Entry::Kind::Input:
                j["inputs"].push_back({{"file", e.a}, {"fnv1a", e.b}});
                break;
            case Entry::Kind::Section:
                j["body"].push_back({{"section", e.a}});
                break;
            case Entry::Kind::Kv:
                j["body"].push_back({{"key", e.a}, {"value", e.b}});
                break;
        }
    }
    return j.dump(2) + "\n";
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file for digest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(buf.str());
    return os.str();
}

std::string basename_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

}  // namespace charres
