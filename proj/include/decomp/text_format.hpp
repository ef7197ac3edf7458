/*!
  \file text_format.hpp
  \brief Truth-table text format

  \verbatim
  # comment
  var x1                 binary shorthand, domain { 0 1 }
  var x2 { lo med hi }
  output F { 0 1 }
  0 lo 1                 one row per tuple, schema order
  1 hi -                 `-` (don't-care) only in the output column
  \endverbatim

  A `|` token inside a row is ignored, so `0 0 | 1` is accepted. With an
  output declared the rows form a truth table: tuple ids are the
  mixed-radix index of the input vector (first input most significant)
  whenever the input space is covered, and input order otherwise.
*/

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relation.hpp"

namespace decomp
{

enum class missing_rows
{
  reject,
  extend,
  allow
};

namespace detail
{

inline std::vector<std::string> tokenize( std::string line )
{
  if ( auto hash = line.find( '#' ); hash != std::string::npos )
    line.erase( hash );
  std::string spaced;
  for ( char c : line )
  {
    if ( c == '{' || c == '}' )
    {
      spaced += ' ';
      spaced += c;
      spaced += ' ';
    }
    else
    {
      spaced += c;
    }
  }
  std::istringstream is( spaced );
  std::vector<std::string> out;
  for ( std::string tok; is >> tok; )
    out.push_back( tok );
  return out;
}

inline std::size_t input_space( std::vector<attribute> const& schema )
{
  std::size_t n = 1u;
  for ( auto const& a : schema )
  {
    if ( a.role == attr_role::input )
      n *= a.dom.size();
  }
  return n;
}

inline tuple_id mixed_radix( std::vector<attribute> const& schema, std::vector<int> const& values )
{
  std::size_t id = 0u;
  for ( auto i = 0u; i < schema.size(); ++i )
  {
    if ( schema[i].role == attr_role::input )
      id = id * schema[i].dom.size() + static_cast<std::size_t>( values[i] );
  }
  return static_cast<tuple_id>( id );
}

} // namespace detail

/*! \brief Parses the text format. Errors carry the offending line number.

  At most `max_outputs` output attributes are accepted; emitted g tables
  in binary encoding carry one output per bridge bit.
*/
inline relation parse_table( std::string_view text, missing_rows mode = missing_rows::reject, std::size_t max_outputs = 1u )
{
  std::vector<attribute> schema;
  std::vector<std::vector<int>> rows;
  std::istringstream is{ std::string( text ) };
  std::size_t line_no = 0u;
  auto const fail = [&]( std::string const& msg ) { throw decomp_error( "line " + std::to_string( line_no ) + ": " + msg ); };

  for ( std::string line; std::getline( is, line ); )
  {
    ++line_no;
    auto tokens = detail::tokenize( line );
    if ( tokens.empty() )
      continue;
    if ( tokens[0] == "var" || tokens[0] == "output" )
    {
      if ( !rows.empty() )
        fail( "declarations must precede the rows" );
      if ( tokens.size() < 2u )
        fail( "missing attribute name" );
      domain dom = binary_domain( tokens[1] );
      if ( tokens.size() > 2u )
      {
        if ( tokens[2] != "{" || tokens.back() != "}" )
          fail( "expected `{ values }` after the attribute name" );
        dom.values.assign( tokens.begin() + 3, tokens.end() - 1 );
      }
      auto const role = tokens[0] == "output" ? attr_role::output : attr_role::input;
      if ( role == attr_role::output &&
           static_cast<std::size_t>( std::count_if( schema.begin(), schema.end(), []( auto const& a ) {
             return a.role == attr_role::output;
           } ) ) >= max_outputs )
        fail( max_outputs == 1u ? "only one output attribute is supported" : "too many output attributes" );
      try
      {
        dom.validate();
      }
      catch ( decomp_error const& e )
      {
        fail( e.what() );
      }
      schema.push_back( { std::move( dom ), role } );
      continue;
    }
    if ( schema.empty() )
      fail( "row before any declaration" );
    std::erase( tokens, std::string( "|" ) );
    if ( tokens.size() != schema.size() )
      fail( "row has " + std::to_string( tokens.size() ) + " values, schema has " + std::to_string( schema.size() ) );
    std::vector<int> values;
    for ( auto i = 0u; i < tokens.size(); ++i )
    {
      if ( tokens[i] == "-" )
      {
        if ( schema[i].role != attr_role::output )
          fail( "don't-care in input attribute '" + schema[i].name() + "'" );
        values.push_back( dont_care );
        continue;
      }
      auto const v = schema[i].dom.index_of( tokens[i] );
      if ( v < 0 )
        fail( "value '" + tokens[i] + "' not in domain of '" + schema[i].name() + "'" );
      values.push_back( v );
    }
    rows.push_back( std::move( values ) );
  }
  if ( schema.empty() )
    throw decomp_error( "no attributes declared" );

  relation r( schema );
  bool const truth_table =
      std::any_of( schema.begin(), schema.end(), []( auto const& a ) { return a.role == attr_role::output; } );
  if ( !truth_table )
  {
    std::set<std::vector<int>> seen;
    tuple_id next = 0;
    for ( auto& row : rows )
    {
      if ( seen.insert( row ).second )
        r.add_tuple( std::move( row ), next++ );
    }
    return r;
  }

  std::vector<std::size_t> in_idx;
  for ( auto i = 0u; i < schema.size(); ++i )
  {
    if ( schema[i].role == attr_role::input )
      in_idx.push_back( i );
  }
  std::map<std::vector<int>, std::vector<int>> by_input;
  std::vector<std::vector<int>> ordered;
  for ( auto& row : rows )
  {
    std::vector<int> key;
    for ( auto i : in_idx )
      key.push_back( row[i] );
    auto [it, fresh] = by_input.emplace( key, row );
    if ( fresh )
      ordered.push_back( row );
    else if ( it->second != row )
      throw decomp_error( "conflicting rows for the same input vector" );
  }

  auto const space = detail::input_space( schema );
  if ( ordered.size() < space )
  {
    if ( mode == missing_rows::reject )
      throw decomp_error( "truth table misses " + std::to_string( space - ordered.size() ) +
                          " input rows (use --extend-missing to add them as don't-cares)" );
    if ( mode == missing_rows::extend )
    {
      std::vector<int> current( schema.size(), 0 );
      for ( std::size_t n = 0u; n < space; ++n )
      {
        auto rem = n;
        for ( auto k = in_idx.size(); k-- > 0u; )
        {
          auto const radix = schema[in_idx[k]].dom.size();
          current[in_idx[k]] = static_cast<int>( rem % radix );
          rem /= radix;
        }
        std::vector<int> key;
        for ( auto i : in_idx )
          key.push_back( current[i] );
        if ( by_input.count( key ) )
          continue;
        auto row = current;
        for ( auto i = 0u; i < schema.size(); ++i )
        {
          if ( schema[i].role == attr_role::output )
            row[i] = dont_care;
        }
        ordered.push_back( std::move( row ) );
      }
    }
  }

  if ( ordered.size() == space )
  {
    std::sort( ordered.begin(), ordered.end(), [&]( auto const& a, auto const& b ) {
      return detail::mixed_radix( schema, a ) < detail::mixed_radix( schema, b );
    } );
    for ( auto& row : ordered )
    {
      auto const id = detail::mixed_radix( schema, row );
      r.add_tuple( std::move( row ), id );
    }
  }
  else
  {
    tuple_id next = 0;
    for ( auto& row : ordered )
      r.add_tuple( std::move( row ), next++ );
  }
  return r;
}

/*! \brief Writes a relation in the text format, rows ordered by tuple id. */
inline std::string serialize( relation const& r )
{
  std::ostringstream os;
  for ( auto const& a : r.schema() )
  {
    os << ( a.role == attr_role::output ? "output " : "var " ) << a.name();
    if ( a.dom.values != std::vector<std::string>{ "0", "1" } )
    {
      os << " {";
      for ( auto const& v : a.dom.values )
        os << " " << v;
      os << " }";
    }
    os << "\n";
  }
  std::vector<tuple const*> rows;
  for ( auto const& t : r.tuples() )
    rows.push_back( &t );
  std::sort( rows.begin(), rows.end(), []( auto a, auto b ) { return a->id < b->id; } );
  for ( auto const* t : rows )
  {
    for ( auto i = 0u; i < t->values.size(); ++i )
      os << ( i ? " " : "" ) << r.value_string( i, t->values[i] );
    os << "\n";
  }
  return os.str();
}

} // namespace decomp
