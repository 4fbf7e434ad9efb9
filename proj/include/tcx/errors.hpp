#pragma once

#include <stdexcept>
#include <string>

namespace tcx {

// Base class for everything thrown on bad input. Logic bugs inside the
// library throw std::logic_error instead and are not meant to be caught.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct empty_input : error {
    explicit empty_input(const std::string& what) : error(what) {}
};

struct unknown_vertex : error {
    explicit unknown_vertex(const std::string& what) : error(what) {}
};

struct not_a_facet : error {
    explicit not_a_facet(const std::string& what) : error(what) {}
};

struct domain_mismatch : error {
    explicit domain_mismatch(const std::string& what) : error(what) {}
};

struct not_simplicial : error {
    explicit not_simplicial(const std::string& what) : error(what) {}
};

struct size_limit_exceeded : error {
    explicit size_limit_exceeded(const std::string& what) : error(what) {}
};

struct index_out_of_range : error {
    explicit index_out_of_range(const std::string& what) : error(what) {}
};

struct not_a_power : error {
    explicit not_a_power(const std::string& what) : error(what) {}
};

struct too_large : error {
    explicit too_large(const std::string& what) : error(what) {}
};

struct precondition_violated : error {
    explicit precondition_violated(const std::string& what) : error(what) {}
};

struct parse_error : error {
    parse_error(const std::string& what, int line_no = 0)
        : error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")" : what),
          line(line_no) {}
    int line;
};

}  // namespace tcx
