#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "malris/channel.hpp"

namespace malris {
namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_block(std::ostream& out, const char* name, std::size_t rows, std::size_t cols,
                 std::span<const cplx> data) {
    out << name << ' ' << rows << ' ' << cols << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const cplx v = data[r * cols + c];
            if (c != 0) out << ' ';
            out << fmt17(v.real()) << ' ' << fmt17(v.imag());
        }
        out << '\n';
    }
}

// Lines starting with '#' are comments.
void skip_comments(std::istream& in) {
    in >> std::ws;
    while (in.peek() == '#') {
        std::string discard;
        std::getline(in, discard);
        in >> std::ws;
    }
}

CMatrix read_block(std::istream& in, const std::string& expected) {
    skip_comments(in);
    std::string name;
    std::size_t rows = 0, cols = 0;
    if (!(in >> name >> rows >> cols) || name != expected) {
        throw std::runtime_error("channel dump: expected block '" + expected + "'");
    }
    CMatrix m(rows, cols);
    for (auto& v : m.flat()) {
        double re = 0.0, im = 0.0;
        if (!(in >> re >> im)) throw std::runtime_error("channel dump: truncated block '" + expected + "'");
        v = {re, im};
    }
    return m;
}

double read_scalar(std::istream& in, const std::string& expected) {
    skip_comments(in);
    std::string name;
    double v = 0.0;
    if (!(in >> name >> v) || name != expected) {
        throw std::runtime_error("channel dump: expected '" + expected + "'");
    }
    return v;
}

}  // namespace

void write_channel_dump(const ChannelSet& ch, std::ostream& out) {
    write_block(out, "h_br", ch.h_br.rows(), ch.h_br.cols(), ch.h_br.flat());
    write_block(out, "h_ru", 1, ch.h_ru.size(), ch.h_ru);
    write_block(out, "h_re", 1, ch.h_re.size(), ch.h_re);
    out << "pl_br " << fmt17(ch.pl_br) << '\n';
    out << "pl_ru " << fmt17(ch.pl_ru) << '\n';
    out << "pl_re " << fmt17(ch.pl_re) << '\n';
}

ChannelSet read_channel_dump(std::istream& in) {
    ChannelSet ch;
    ch.h_br = read_block(in, "h_br");
    const CMatrix ru = read_block(in, "h_ru");
    const CMatrix re = read_block(in, "h_re");
    ch.h_ru.assign(ru.flat().begin(), ru.flat().end());
    ch.h_re.assign(re.flat().begin(), re.flat().end());
    ch.pl_br = read_scalar(in, "pl_br");
    ch.pl_ru = read_scalar(in, "pl_ru");
    ch.pl_re = read_scalar(in, "pl_re");
    return ch;
}

}  // namespace malris
