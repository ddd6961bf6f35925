#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "loggas/errors.hpp"

namespace loggas {

struct Domain {
    enum class Kind { Line, Window, Torus, Disk, Plane };
    Kind kind = Kind::Line;
    double extent = 0.0;  // window halfwidth, torus size, or disk radius

    static Domain line() { return {Kind::Line, 0.0}; }
    static Domain window(double halfwidth) { return {Kind::Window, halfwidth}; }
    static Domain torus(double size) { return {Kind::Torus, size}; }
    static Domain disk(double radius) { return {Kind::Disk, radius}; }
    static Domain plane() { return {Kind::Plane, 0.0}; }

    bool contains(double x) const {
        switch (kind) {
            case Kind::Line: return true;
            case Kind::Window: return x > -extent && x < extent;
            case Kind::Torus: return x > -extent / 2.0 && x <= extent / 2.0;
            default: return false;
        }
    }
    bool contains(std::complex<double> z) const {
        switch (kind) {
            case Kind::Plane: return true;
            case Kind::Disk: return std::abs(z) <= extent;
            default: return false;
        }
    }

    std::string name() const {
        switch (kind) {
            case Kind::Line: return "line";
            case Kind::Window: return "window";
            case Kind::Torus: return "torus";
            case Kind::Disk: return "disk";
            case Kind::Plane: return "plane";
        }
        return "?";
    }
};

// Finite labelled point set on the line or in the plane.
struct Configuration {
    std::vector<double> xs;
    std::vector<std::complex<double>> zs;
    bool two_d = false;
    Domain domain = Domain::line();

    static Configuration real_points(std::vector<double> pts, Domain dom = Domain::line()) {
        Configuration c;
        c.xs = std::move(pts);
        c.domain = dom;
        c.validate();
        return c;
    }

    static Configuration complex_points(std::vector<std::complex<double>> pts,
                                        Domain dom = Domain::plane()) {
        Configuration c;
        c.zs = std::move(pts);
        c.two_d = true;
        c.domain = dom;
        c.validate();
        return c;
    }

    std::size_t size() const { return two_d ? zs.size() : xs.size(); }

    void validate() const {
        if (two_d) {
            for (auto z : zs)
                if (!domain.contains(z))
                    throw Error("Configuration: point outside declared domain");
        } else {
            for (double x : xs)
                if (!domain.contains(x))
                    throw Error("Configuration: point outside declared domain");
        }
    }

    // wrap a real point into the torus fundamental domain (-n/2, n/2]
    static double wrap_torus(double x, double n) {
        double y = std::fmod(x, n);
        if (y <= -n / 2.0) y += n;
        if (y > n / 2.0) y -= n;
        return y;
    }
};

}  // namespace loggas
