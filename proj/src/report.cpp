#include "cqc/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cqc {

Json& Json::set(const std::string& key, Json v) {
    if (!std::holds_alternative<Object>(value_)) throw std::logic_error("Json::set on non-object");
    auto& members = std::get<Object>(value_).members;
    for (auto& [k, existing] : members) {
        if (k == key) {
            existing = std::move(v);
            return *this;
        }
    }
    members.emplace_back(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    if (!std::holds_alternative<Array>(value_)) throw std::logic_error("Json::push on non-array");
    std::get<Array>(value_).items.push_back(std::move(v));
    return *this;
}

namespace {

void write_escaped(std::ostream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            case '\r': out << "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out << buf;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
}

void write_double(std::ostream& out, double v) {
    if (std::isnan(v)) {
        out << "\"nan\"";
    } else if (std::isinf(v)) {
        out << (v > 0 ? "\"inf\"" : "\"-inf\"");
    } else {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    }
}

}  // namespace

void Json::dump_impl(std::ostream& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string closing_pad(static_cast<std::size_t>(indent) * depth, ' ');
    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out << "null";
    } else if (std::holds_alternative<bool>(value_)) {
        out << (std::get<bool>(value_) ? "true" : "false");
    } else if (std::holds_alternative<std::int64_t>(value_)) {
        out << std::get<std::int64_t>(value_);
    } else if (std::holds_alternative<double>(value_)) {
        write_double(out, std::get<double>(value_));
    } else if (std::holds_alternative<std::string>(value_)) {
        write_escaped(out, std::get<std::string>(value_));
    } else if (std::holds_alternative<Object>(value_)) {
        const auto& members = std::get<Object>(value_).members;
        if (members.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        for (std::size_t i = 0; i < members.size(); ++i) {
            out << pad;
            write_escaped(out, members[i].first);
            out << ": ";
            members[i].second.dump_impl(out, indent, depth + 1);
            out << (i + 1 < members.size() ? ",\n" : "\n");
        }
        out << closing_pad << '}';
    } else {
        const auto& items = std::get<Array>(value_).items;
        if (items.empty()) {
            out << "[]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < items.size(); ++i) {
            out << pad;
            items[i].dump_impl(out, indent, depth + 1);
            out << (i + 1 < items.size() ? ",\n" : "\n");
        }
        out << closing_pad << ']';
    }
}

void Json::dump(std::ostream& out, int indent) const {
    dump_impl(out, indent, 0);
    out << '\n';
}

std::string Json::dump_string(int indent) const {
    std::ostringstream os;
    dump(os, indent);
    return os.str();
}

void Json::csv_impl(std::ostream& out, const std::string& prefix) const {
    if (std::holds_alternative<Object>(value_)) {
        for (const auto& [k, v] : std::get<Object>(value_).members)
            v.csv_impl(out, prefix.empty() ? k : prefix + "." + k);
    } else if (std::holds_alternative<Array>(value_)) {
        const auto& items = std::get<Array>(value_).items;
        for (std::size_t i = 0; i < items.size(); ++i)
            items[i].csv_impl(out, prefix + "[" + std::to_string(i) + "]");
    } else if (std::holds_alternative<std::nullptr_t>(value_)) {
        out << prefix << ",null\n";
    } else if (std::holds_alternative<bool>(value_)) {
        out << prefix << ',' << (std::get<bool>(value_) ? "true" : "false") << '\n';
    } else if (std::holds_alternative<std::int64_t>(value_)) {
        out << prefix << ',' << std::get<std::int64_t>(value_) << '\n';
    } else if (std::holds_alternative<double>(value_)) {
        out << prefix << ',';
        write_double(out, std::get<double>(value_));
        out << '\n';
    } else {
        out << prefix << ',';
        write_escaped(out, std::get<std::string>(value_));
        out << '\n';
    }
}

std::string Json::dump_csv() const {
    std::ostringstream os;
    os << "key,value\n";
    csv_impl(os, "");
    return os.str();
}

}  // namespace cqc
