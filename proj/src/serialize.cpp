#include "philab/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace philab {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) throw ParseError("matrix has the wrong number of rows");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix row has the wrong length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = field::from_int(j[i][c].get<std::int64_t>());
    }
    return m;
}

json module_to_json(const Module& m) {
    const Quiver& q = m.algebra()->quiver();
    json action = json::object();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) action[q.arrow(a).label] = matrix_to_json(m.action(a));
    return {{"algebra_id", m.algebra()->id()}, {"dims", m.dims()}, {"action", action}};
}

Module module_from_json(const json& j, const AlgebraPtr& alg) {
    try {
        if (j.at("algebra_id").get<std::string>() != alg->id())
            throw ParseError("module is over " + j.at("algebra_id").get<std::string>() + ", expected " + alg->id());
        auto dims = j.at("dims").get<std::vector<std::size_t>>();
        const Quiver& q = alg->quiver();
        if (dims.size() != q.vertex_count()) throw ParseError("dims has the wrong length");
        std::vector<Matrix> action;
        for (auto& ar : q.arrows()) {
            const json& a = j.at("action");
            if (a.contains(ar.label))
                action.push_back(matrix_from_json(a.at(ar.label), dims[ar.target], dims[ar.source]));
            else
                action.emplace_back(dims[ar.target], dims[ar.source]);
        }
        return Module(alg, std::move(dims), std::move(action));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed module JSON: ") + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f << contents;
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            throw std::runtime_error("write failed for " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace philab
