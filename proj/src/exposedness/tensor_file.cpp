#include "satrestore/exposedness/tensor_file.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "satrestore/core/error.hpp"

namespace satrestore {

namespace {

constexpr const char* kMagic = "satrestore-tensors";

std::string shape_string(const std::vector<int>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "," : "") + std::to_string(shape[i]);
    return s + "]";
}

}  // namespace

std::size_t Tensor::element_count() const noexcept {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                           [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
}

TensorFile TensorFile::parse(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic || version != 1) {
        throw ParseError(source, "byte 0", "missing 'satrestore-tensors 1' header");
    }
    TensorFile file;
    std::string name;
    while (in >> name) {
        const auto where = [&] { return "byte " + std::to_string(static_cast<long long>(in.tellg())); };
        int rank = 0;
        if (!(in >> rank) || rank < 1 || rank > 8) throw ParseError(source, where(), "bad rank for '" + name + "'");
        Tensor t;
        t.shape.resize(static_cast<std::size_t>(rank));
        for (int& d : t.shape) {
            if (!(in >> d) || d < 1) throw ParseError(source, where(), "bad dimension for '" + name + "'");
        }
        t.values.resize(t.element_count());
        for (double& v : t.values) {
            std::string tok;
            if (!(in >> tok)) throw ParseError(source, where(), "truncated values for '" + name + "'");
            auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || end != tok.data() + tok.size()) {
                throw ParseError(source, where(), "malformed value '" + tok + "' in '" + name + "'");
            }
        }
        if (file.entries_.count(name)) throw ParseError(source, where(), "duplicate tensor '" + name + "'");
        file.entries_.emplace(name, std::move(t));
    }
    return file;
}

TensorFile TensorFile::read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open tensor file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string TensorFile::serialize() const {
    std::string out = std::string(kMagic) + " 1\n";
    char buf[64];
    for (const auto& [name, t] : entries_) {
        out += name + " " + std::to_string(t.shape.size());
        for (int d : t.shape) out += " " + std::to_string(d);
        out += "\n";
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t.values[i]);
            (void)ec;
            out.append(buf, end);
            out += (i + 1 == t.values.size() || (i + 1) % 9 == 0) ? '\n' : ' ';
        }
    }
    return out;
}

void TensorFile::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << serialize();
    if (!out) throw Error("writing '" + path + "' failed");
}

const Tensor& TensorFile::at(const std::string& name) const {
    const auto it = entries_.find(name);
    if (it == entries_.end()) throw Error("tensor '" + name + "' not found");
    return it->second;
}

const Tensor& TensorFile::expect(const std::string& name, const std::vector<int>& shape) const {
    const Tensor& t = at(name);
    if (t.shape != shape) {
        throw ShapeError("tensor '" + name + "' has shape " + shape_string(t.shape) + ", expected " +
                         shape_string(shape));
    }
    return t;
}

void TensorFile::set(const std::string& name, Tensor tensor) {
    if (tensor.values.size() != tensor.element_count()) {
        throw ShapeError("tensor '" + name + "': value count does not match shape");
    }
    entries_[name] = std::move(tensor);
}

}  // namespace satrestore
