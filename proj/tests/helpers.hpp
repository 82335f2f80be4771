// Shared test utilities: fixture paths, temp files, tiny series builders.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "tsecon/timeseries.hpp"

namespace testutil {

inline std::string fixture_csv() { return std::string(TSECON_SRC) + "/data/china_1980_2019.csv"; }

inline tsecon::time_series series(std::string name, int start_year, std::vector<double> v,
                                  std::string unit = "") {
    tsecon::time_series s;
    s.name = std::move(name);
    s.start_year = start_year;
    s.values = std::move(v);
    s.unit = std::move(unit);
    return s;
}

// Unique scratch directory, removed on destruction.
class temp_dir {
public:
    temp_dir() {
        auto base = std::filesystem::temp_directory_path();
        static int counter = 0;
        path_ = base / ("tsecon_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~temp_dir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::filesystem::path path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string write_file(const temp_dir& dir, const std::string& name,
                              const std::string& content) {
    std::string p = dir.file(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace testutil
