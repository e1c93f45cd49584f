#include "rom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rom {

namespace {

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw missing_artifact_error("cannot open " + path.string());
    return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_matrix(const std::filesystem::path& path, const Mat& m) {
    auto out = open_for_write(path);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Mat read_matrix(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    Eigen::Index rows = -1, cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw std::runtime_error(path.string() + ": malformed matrix header");
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            if (!(in >> m(i, j)))
                throw std::runtime_error(path.string() + ": truncated matrix body");
    return m;
}

void write_vector(const std::filesystem::path& path, const Vec& v) {
    write_matrix(path, v);
}

Vec read_vector(const std::filesystem::path& path) {
    Mat m = read_matrix(path);
    if (m.cols() != 1) throw std::runtime_error(path.string() + ": expected a column vector");
    return m.col(0);
}

void write_indices(const std::filesystem::path& path, const std::vector<int>& indices) {
    auto out = open_for_write(path);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) out << ',';
        out << indices[i];
    }
    out << '\n';
}

std::vector<int> read_indices(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path.string() + ": empty index file");
    std::vector<int> indices;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) indices.push_back(std::stoi(tok));
    return indices;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    auto out = open_for_write(path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(tok);
        return out;
    };
    if (!std::getline(in, line))
        throw std::runtime_error(path.string() + ": empty CSV");
    table.header = split(line);
    while (std::getline(in, line))
        if (!line.empty()) table.rows.push_back(split(line));
    return table;
}

}  // namespace rom
