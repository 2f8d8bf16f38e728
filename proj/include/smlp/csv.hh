/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_CSV_HH
#define SMLP_CSV_HH

#include <smlp/jsonx.hh>

#include <fstream>
#include <zlib.h>

namespace smlp {

inline str read_file_maybe_gz(const str &path)
{
	if (path.size() > 4 && path.ends_with(".bz2"))
		die("'%s': bzip2-compressed files are not supported, "
		    "decompress first", path.c_str());
	if (path.size() > 3 && path.ends_with(".gz")) {
		gzFile f = gzopen(path.c_str(), "rb");
		if (!f)
			die("cannot open '%s'", path.c_str());
		str out;
		char buf[1 << 16];
		int n;
		while ((n = gzread(f, buf, sizeof(buf))) > 0)
			out.append(buf, n);
		bool bad = n < 0;
		gzclose(f);
		if (bad)
			die("error decompressing '%s'", path.c_str());
		return out;
	}
	return slurp_file(path);
}

namespace detail {

inline str trim(strview s)
{
	while (!s.empty() && isspace((unsigned char)s.front()))
		s.remove_prefix(1);
	while (!s.empty() && isspace((unsigned char)s.back()))
		s.remove_suffix(1);
	if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
		s.remove_prefix(1);
		s.remove_suffix(1);
	}
	return str(s);
}

inline vec<str> split_csv_line(strview line)
{
	vec<str> out;
	size_t start = 0;
	for (size_t i = 0; i <= line.size(); i++)
		if (i == line.size() || line[i] == ',') {
			out.push_back(trim(line.substr(start, i-start)));
			start = i+1;
		}
	return out;
}

} // namespace detail

/* a CSV file as written: header plus string cells, possibly ragged */
struct raw_csv {

	vec<str> cols;
	vec<vec<str>> rows;
};

inline raw_csv parse_raw_csv(const str &text, const str &origin)
{
	raw_csv r;
	size_t pos = 0;
	bool header = true;
	while (pos < text.size()) {
		size_t nl = text.find('\n', pos);
		strview line(text.data()+pos,
		             (nl == str::npos ? text.size() : nl) - pos);
		pos = nl == str::npos ? text.size() : nl+1;
		if (!line.empty() && line.back() == '\r')
			line.remove_suffix(1);
		if (line.empty())
			continue;
		vec<str> cells = detail::split_csv_line(line);
		if (header) {
			r.cols = move(cells);
			header = false;
		} else
			r.rows.push_back(move(cells));
	}
	if (header)
		die("'%s': empty CSV file", origin.c_str());
	return r;
}

inline raw_csv load_raw_csv(const str &path)
{
	return parse_raw_csv(read_file_maybe_gz(path), path);
}

/* fully numeric, rectangular data table */
struct dataset {

	vec<str> cols;
	vec<vec<Q>> rows;

	size_t ncols() const { return cols.size(); }
	size_t nrows() const { return rows.size(); }

	int col(strview name) const
	{
		for (size_t i = 0; i < cols.size(); i++)
			if (cols[i] == name)
				return (int)i;
		return -1;
	}

	int col_req(strview name) const
	{
		int i = col(name);
		if (i < 0)
			die("data has no column '%.*s'",
			    (int)name.size(), name.data());
		return i;
	}

	hmap<str,Q> row_assignment(size_t r) const
	{
		hmap<str,Q> a;
		for (size_t c = 0; c < cols.size(); c++)
			a[cols[c]] = rows[r][c];
		return a;
	}
};

inline dataset load_dataset(const str &path)
{
	raw_csv raw = load_raw_csv(path);
	dataset d;
	d.cols = raw.cols;
	d.rows.reserve(raw.rows.size());
	for (size_t r = 0; r < raw.rows.size(); r++) {
		if (raw.rows[r].size() != d.cols.size())
			die("'%s': row %zu has %zu fields, expected %zu",
			    path.c_str(), r+2, raw.rows[r].size(),
			    d.cols.size());
		vec<Q> row;
		row.reserve(d.cols.size());
		for (size_t c = 0; c < d.cols.size(); c++) {
			opt<Q> q = try_parse_q(raw.rows[r][c]);
			if (!q)
				die("'%s': row %zu, column '%s': invalid "
				    "number '%s'", path.c_str(), r+2,
				    d.cols[c].c_str(),
				    raw.rows[r][c].c_str());
			row.push_back(move(*q));
		}
		d.rows.push_back(move(row));
	}
	return d;
}

inline void write_csv(const str &path, const vec<str> &cols,
                      const vec<vec<str>> &rows)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		die("cannot write '%s'", path.c_str());
	for (size_t i = 0; i < cols.size(); i++)
		out << (i ? "," : "") << cols[i];
	out << "\n";
	for (const vec<str> &r : rows) {
		for (size_t i = 0; i < r.size(); i++)
			out << (i ? "," : "") << r[i];
		out << "\n";
	}
	if (!out.flush())
		die("error writing '%s'", path.c_str());
}

} // namespace smlp

#endif
