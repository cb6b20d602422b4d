#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cqc {

// Minimal ordered JSON value for report emission. Keys keep insertion order
// and doubles are always printed with 17 significant digits, so a report is
// byte-identical across runs with the same config and seed.
class Json {
  public:
    Json() : value_(nullptr) {}

    static Json object() {
        Json j;
        j.value_ = Object{};
        return j;
    }
    static Json array() {
        Json j;
        j.value_ = Array{};
        return j;
    }
    Json(double v) : value_(v) {}
    Json(int v) : value_(static_cast<std::int64_t>(v)) {}
    Json(unsigned v) : value_(static_cast<std::int64_t>(v)) {}
    Json(std::int64_t v) : value_(v) {}
    Json(std::uint64_t v) : value_(static_cast<std::int64_t>(v)) {}
    Json(std::size_t v) : value_(static_cast<std::int64_t>(v)) {}
    Json(bool v) : value_(v) {}
    Json(const char* v) : value_(std::string(v)) {}
    Json(std::string v) : value_(std::move(v)) {}

    Json& set(const std::string& key, Json v);
    Json& push(Json v);

    void dump(std::ostream& out, int indent = 2) const;
    std::string dump_string(int indent = 2) const;

    // Flat "key,value" lines for scalar leaves (CSV sweep output).
    std::string dump_csv() const;

  private:
    struct Object {
        std::vector<std::pair<std::string, Json>> members;
    };
    struct Array {
        std::vector<Json> items;
    };
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Object, Array> value_;

    void dump_impl(std::ostream& out, int indent, int depth) const;
    void csv_impl(std::ostream& out, const std::string& prefix) const;
};

}  // namespace cqc
