/*!
  \file cli.hpp
  \brief Command driver behind the `decomp-forge` executable

  `run` executes one command and writes a deterministic text report. Exit
  codes: 0 success, 1 usage or parse error, 2 a verification flag (or a
  checked dependency) is false.
*/

#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chart.hpp"
#include "decompose.hpp"
#include "dependency.hpp"
#include "relation.hpp"
#include "text_format.hpp"

namespace decomp
{

inline constexpr char const* report_header = "# decomp-forge v1";

enum class exit_code : int
{
  ok = 0,
  usage = 1,
  verification = 2
};

struct run_config
{
  /*! \brief One of decompose, chart, check-fd, check-mvd, verify. */
  std::string command;
  /*! \brief Input table path, `-` for standard input. */
  std::string input{ "-" };
  std::vector<attr_set> bound;
  std::optional<attr_set> free;
  /*! \brief auto, alpha, beta, gamma or delta. */
  std::string algorithm{ "auto" };
  mcp_mode mcp{ mcp_mode::exact };
  encoding enc{ encoding::single_var };
  bool extend_missing{ false };
  /*! \brief Report destination, empty for standard output. */
  std::string output;
  /*! \brief Shuffles equivalent-column merge order; the result must not change. */
  std::optional<unsigned> seed;
  bool enumerate_gamma{ false };
  std::size_t limit{ 64u };
  attr_set lhs;
  attr_set rhs;
  /*! \brief Tables read by `verify`. */
  std::string table_g;
  std::string table_h;
  /*! \brief Files written by `decompose` (first decomposition). */
  std::string emit_g;
  std::string emit_h;
};

/*! \brief Splits `a,b,c` into names; empty items are dropped. */
inline attr_set split_list( std::string const& text )
{
  attr_set out;
  std::string item;
  std::istringstream is( text );
  while ( std::getline( is, item, ',' ) )
  {
    auto const b = item.find_first_not_of( " \t" );
    if ( b == std::string::npos )
      continue;
    out.push_back( item.substr( b, item.find_last_not_of( " \t" ) - b + 1u ) );
  }
  return out;
}

namespace detail
{

inline std::string read_source( std::string const& path )
{
  if ( path == "-" )
    return { std::istreambuf_iterator<char>( std::cin ), std::istreambuf_iterator<char>() };
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw decomp_error( "cannot open '" + path + "'" );
  return { std::istreambuf_iterator<char>( in ), std::istreambuf_iterator<char>() };
}

inline void write_file( std::string const& path, std::string const& text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw decomp_error( "cannot write '" + path + "'" );
  out << text;
}

inline std::string list( attr_set const& s )
{
  std::string out;
  for ( auto const& a : s )
    out += ( out.empty() ? "" : "," ) + a;
  return out.empty() ? std::string( "{}" ) : out;
}

inline char const* flag( bool b ) { return b ? "true" : "false"; }

inline std::string tuple_text( relation const& r, tuple const& t )
{
  std::string s = "t" + std::to_string( t.id ) + ":";
  for ( auto i = 0u; i < t.values.size(); ++i )
    s += " " + r.value_string( i, t.values[i] );
  return s;
}

inline void print_dependency( std::ostream& os, relation const& r, dependency_report const& rep )
{
  os << rep.to_string() << "\n";
  if ( rep.witness )
  {
    os << "  " << tuple_text( r, r.by_id( rep.witness->first ) ) << "\n";
    os << "  " << tuple_text( r, r.by_id( rep.witness->second ) ) << "\n";
  }
}

inline void print_bridge( std::ostream& os, decomposition const& d )
{
  auto const& ch = d.final_chart;
  os << "## bridge partition " << list( d.bridge_attrs ) << "\n";
  os << "k " << d.k << "\n";
  os << "bits " << d.bits << "\n";
  os << "nontrivial " << flag( d.nontrivial ) << "\n";
  for ( auto c = 0u; c < ch.columns.size(); ++c )
  {
    auto const code = d.bridge_partition.block_of( ch.column_tuples( c ).front() );
    os << d.w_domain.name << "=" << code << " " << ch.column_label( c );
    if ( code == 0u && !ch.dropped.empty() )
    {
      for ( auto b : ch.dropped )
        os << " +P" << ch.bound_blocks[b].label;
    }
    os << " " << partition( { d.bridge_partition[code] } ).to_string() << "\n";
  }
  if ( ch.columns.empty() )
    os << d.w_domain.name << "=0 " << d.bridge_partition.to_string() << "\n";
}

inline void print_verification( std::ostream& os, verification_report const& v, std::optional<bool> optimal )
{
  os << "## verification\n";
  os << "fd_y_w " << flag( v.fd_y_w.holds ) << "\n";
  os << "fd_wz_f " << flag( v.fd_wz_f.holds ) << "\n";
  os << "mvd " << flag( v.mvd_ok ) << "\n";
  os << "join_roundtrip " << flag( v.join_roundtrip ) << "\n";
  os << "recomposition " << flag( v.recomposition ) << "\n";
  os << "optimal " << ( optimal ? flag( *optimal ) : "unchecked" ) << "\n";
}

inline void print_decomposition( std::ostream& os, decomposition const& d )
{
  os << "## initial chart\n" << to_string( d.initial_chart );
  if ( d.intermediate_chart )
    os << "## intermediate chart\n" << to_string( *d.intermediate_chart );
  os << "## final chart\n" << to_string( d.final_chart );
  for ( auto const& n : d.notes )
    os << "note: " << n << "\n";
  print_bridge( os, d );
  os << "## table g\n" << serialize( d.table_g );
  os << "## table h\n" << serialize( d.table_h );
  print_verification( os, d.verification, d.optimal );
}

inline std::string choose_algorithm( run_config const& cfg, relation const& r, attr_set const& free )
{
  if ( cfg.algorithm != "auto" )
    return cfg.algorithm;
  if ( r.has_dont_care() )
    return "delta";
  if ( cfg.bound.size() > 1u )
    return "beta";
  if ( !disjoint( cfg.bound.front(), free ) )
    return "gamma";
  return "alpha";
}

inline exit_code run_decompose( run_config const& cfg, relation const& r, std::ostream& os )
{
  if ( cfg.bound.empty() )
    throw decomp_error( "decompose needs --bound" );
  attr_set all_bound;
  for ( auto const& y : cfg.bound )
    all_bound = set_union( all_bound, y );
  auto const free = cfg.free ? *cfg.free : set_minus( r.inputs(), all_bound );
  auto const algorithm = choose_algorithm( cfg, r, free );
  if ( algorithm != "beta" && cfg.bound.size() != 1u )
    throw decomp_error( "only the beta algorithm takes several --bound sets" );

  std::optional<std::mt19937> rng;
  if ( cfg.seed )
    rng.emplace( *cfg.seed );
  decompose_params params;
  params.enc = cfg.enc;
  params.mcp = cfg.mcp;
  params.enumerate_limit = cfg.limit;
  params.shuffle = rng ? &*rng : nullptr;

  os << "algorithm " << algorithm << "\n";
  os << "output " << r.outputs().front() << "\n";
  for ( auto const& y : cfg.bound )
    os << "bound " << list( y ) << "\n";
  os << "free " << list( free ) << "\n";

  if ( algorithm == "beta" )
  {
    auto const m = fda_beta( r, cfg.bound, free, params );
    for ( auto i = 0u; i < m.parts.size(); ++i )
    {
      os << "## part " << ( i + 1u ) << " of " << m.parts.size() << "\n";
      print_decomposition( os, m.parts[i] );
    }
    os << "## table h (joint)\n" << serialize( m.table_h );
    auto const& v = m.verification;
    os << "## joint verification\n";
    for ( auto i = 0u; i < v.fd_parts.size(); ++i )
    {
      os << "fd_y" << ( i + 1u ) << "_w" << ( i + 1u ) << " " << flag( v.fd_parts[i].holds ) << "\n";
      os << "mvd_w" << ( i + 1u ) << " " << flag( v.mvd_parts[i] ) << "\n";
    }
    os << "fd_wz_f " << flag( v.fd_h.holds ) << "\n";
    os << "join_roundtrip " << flag( v.join_roundtrip ) << "\n";
    os << "recomposition " << flag( v.recomposition ) << "\n";
    if ( !cfg.emit_g.empty() || !cfg.emit_h.empty() )
      throw decomp_error( "--emit-g/--emit-h are not supported for multiple decomposition" );
    os << "status " << ( v.all() ? "ok" : "verification-failed" ) << "\n";
    return v.all() ? exit_code::ok : exit_code::verification;
  }

  std::vector<decomposition> results;
  auto const& y = cfg.bound.front();
  if ( algorithm == "alpha" )
    results.push_back( fda_alpha( r, y, free, params ) );
  else if ( algorithm == "gamma" && cfg.enumerate_gamma )
    results = fda_gamma_enumerate( r, y, free, params );
  else if ( algorithm == "gamma" )
    results.push_back( fda_gamma( r, y, free, params ) );
  else if ( algorithm == "delta" )
    results = fda_delta( r, y, free, params );
  else
    throw decomp_error( "unknown algorithm '" + algorithm + "'" );

  bool ok = true;
  for ( auto i = 0u; i < results.size(); ++i )
  {
    if ( results.size() > 1u )
      os << "## decomposition " << ( i + 1u ) << " of " << results.size() << "\n";
    print_decomposition( os, results[i] );
    ok = ok && results[i].verification.all();
  }
  if ( !cfg.emit_g.empty() )
    write_file( cfg.emit_g, serialize( results.front().table_g ) );
  if ( !cfg.emit_h.empty() )
    write_file( cfg.emit_h, serialize( results.front().table_h ) );
  os << "status " << ( ok ? "ok" : "verification-failed" ) << "\n";
  return ok ? exit_code::ok : exit_code::verification;
}

inline exit_code run_chart( run_config const& cfg, relation const& r, std::ostream& os )
{
  if ( cfg.bound.size() != 1u )
    throw decomp_error( "chart needs exactly one --bound" );
  auto const free = cfg.free ? *cfg.free : set_minus( r.inputs(), cfg.bound.front() );
  os << to_string( build_chart( r, cfg.bound.front(), free ) );
  return exit_code::ok;
}

/* Re-derives the verification flags from T_g and T_h read from files. */
inline exit_code run_verify( run_config const& cfg, relation const& r, std::ostream& os )
{
  if ( cfg.table_g.empty() || cfg.table_h.empty() )
    throw decomp_error( "verify needs --table-g and --table-h" );
  auto const g = parse_table( read_source( cfg.table_g ), missing_rows::allow, 64u );
  auto const h = parse_table( read_source( cfg.table_h ), missing_rows::allow );
  auto const w = g.outputs();
  auto const y = g.inputs();
  if ( w.empty() || h.outputs().size() != 1u || h.outputs().front() != r.outputs().front() )
    throw decomp_error( "T_g must declare the bridge attributes as outputs and T_h the source output" );
  auto const z = set_minus( h.inputs(), w );
  for ( auto const& a : w )
  {
    if ( !h.has_attr( a ) )
      throw decomp_error( "T_h lacks bridge attribute '" + a + "'" );
  }

  auto const joined = natural_join( g, h );
  auto const common = set_minus( y, set_minus( y, z ) );
  auto const f = r.outputs().front();
  auto const fd_y_w = holds_fd( joined, y, w );
  auto const fd_wz_f = holds_fd( joined, set_union( w, z ), { f } );
  auto const lhs = set_union( w, common ), rhs = set_minus( y, common );
  auto const mvd = lossless_check( joined, lhs, rhs, set_minus( joined.names(), set_union( lhs, rhs ) ) );
  auto const roundtrip = joined.size() == r.size() && relations_equal( project( joined, g.names() ), g ) &&
                         relations_equal( project( joined, h.names() ), h );
  auto const recomposed = recomposition_matches( r, project( joined, r.names() ) );

  os << "bound " << list( y ) << "\n";
  os << "free " << list( z ) << "\n";
  os << "bridge " << list( w ) << "\n";
  print_dependency( os, joined, fd_y_w );
  print_dependency( os, joined, fd_wz_f );
  verification_report v{ fd_y_w, fd_wz_f, {}, mvd, roundtrip, recomposed };
  print_verification( os, v, std::nullopt );
  os << "status " << ( v.all() ? "ok" : "verification-failed" ) << "\n";
  return v.all() ? exit_code::ok : exit_code::verification;
}

} // namespace detail

/*! \brief Executes `cfg`; the report goes to `out` (or the `output` file), diagnostics to `err`. */
inline int run( run_config const& cfg, std::ostream& out, std::ostream& err )
{
  std::ostringstream report;
  exit_code code = exit_code::ok;
  try
  {
    auto const& c = cfg.command;
    if ( c != "decompose" && c != "chart" && c != "check-fd" && c != "check-mvd" && c != "verify" )
      throw decomp_error( "unknown command '" + c + "'" );
    auto const lenient = c == "check-fd" || c == "check-mvd";
    auto const mode = cfg.extend_missing ? missing_rows::extend : lenient ? missing_rows::allow : missing_rows::reject;
    auto const r = parse_table( detail::read_source( cfg.input ), mode );

    report << report_header << "\n";
    report << "command " << c << "\n";
    report << "tuples " << r.size() << "\n";
    if ( c == "check-fd" || c == "check-mvd" )
    {
      if ( cfg.lhs.empty() && cfg.rhs.empty() )
        throw decomp_error( c + " needs --lhs and --rhs" );
      auto const rep = c == "check-fd" ? holds_fd( r, cfg.lhs, cfg.rhs ) : holds_mvd( r, cfg.lhs, cfg.rhs );
      if ( c == "check-mvd" )
        report << "lossless " << detail::flag( lossless_check( r, cfg.lhs, cfg.rhs,
                                                               detail::set_minus( r.names(), detail::set_union( cfg.lhs, cfg.rhs ) ) ) )
               << "\n";
      detail::print_dependency( report, r, rep );
      code = rep.holds ? exit_code::ok : exit_code::verification;
    }
    else
    {
      if ( r.outputs().size() != 1u )
        throw decomp_error( c + " needs a truth table with one output attribute" );
      if ( c == "decompose" )
        code = detail::run_decompose( cfg, r, report );
      else if ( c == "chart" )
        code = detail::run_chart( cfg, r, report );
      else
        code = detail::run_verify( cfg, r, report );
    }
  }
  catch ( consistency_error const& e )
  {
    err << "error: internal consistency check failed: " << e.what() << "\n";
    return static_cast<int>( exit_code::verification );
  }
  catch ( std::exception const& e )
  {
    err << "error: " << e.what() << "\n";
    return static_cast<int>( exit_code::usage );
  }

  if ( cfg.output.empty() )
  {
    out << report.str();
  }
  else
  {
    try
    {
      detail::write_file( cfg.output, report.str() );
    }
    catch ( decomp_error const& e )
    {
      err << "error: " << e.what() << "\n";
      return static_cast<int>( exit_code::usage );
    }
  }
  return static_cast<int>( code );
}

} // namespace decomp
