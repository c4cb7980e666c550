// SPDX-FileCopyrightText: © 2026 wgsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "wgsim/Scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace wgsim
{

  std::string_view toString(CmpOp op)
  {
    switch (op)
      {
      case CmpOp::Eq: return "==";
      case CmpOp::Ne: return "!=";
      case CmpOp::Lt: return "<";
      case CmpOp::Le: return "<=";
      case CmpOp::Gt: return ">";
      case CmpOp::Ge: return ">=";
      }
    return "?";
  }

  std::optional<SpmpEntry> encodeEntry(AddrMode mode, uint64_t a, uint64_t b,
                                       bool r, bool w, bool x, bool s, bool lock)
  {
    SpmpEntry e;
    e.addrMode = mode;
    e.permR = r;
    e.permW = w;
    e.permX = x;
    e.sBit = s;
    e.locked = lock;
    switch (mode)
      {
      case AddrMode::Off:
        e.addrField = 0;
        return e;
      case AddrMode::Tor:
      case AddrMode::Na4:
        if (a % 4 != 0)
          return std::nullopt;
        e.addrField = a >> 2;
        return e;
      case AddrMode::Napot:
        {
          auto field = napotAddrField(a, b);
          if (not field)
            return std::nullopt;
          e.addrField = *field;
          return e;
        }
      }
    return std::nullopt;
  }

  std::variant<PlatformDecl, std::string> toPlatformDecl(const PlatformBlock& block)
  {
    PlatformDecl decl;
    decl.nworlds = block.nworlds;
    decl.harts = block.harts;
    decl.anms = block.anms;
    decl.resources = block.resources;
    for (const VmDecl& vm : block.vms)
      {
        VmImage image;
        image.name = vm.name;
        image.hslwid = vm.hslwid;
        image.wids = vm.wids;
        image.hswitchMask = vm.hswitch;
        image.prestaged = vm.prestaged;
        for (const VmEntryDecl& e : vm.entries)
          {
            auto entry = encodeEntry(e.mode, e.a, e.b, e.r, e.w, e.x, e.s, false);
            if (not entry)
              return "vm '" + vm.name + "': unencodable entry "
                     + std::to_string(e.index);
            image.entries.push_back({e.index, *entry});
          }
        decl.vms.push_back(std::move(image));
      }
    return decl;
  }

  namespace
  {

    enum class Tok : uint8_t { Ident, Number, Punct, Newline, End };

    struct Token
    {
      Tok kind = Tok::End;
      std::string text;
      uint64_t number = 0;
      unsigned line = 1;
      unsigned col = 1;
    };

    struct Fail
    {
      ParseError error;
    };

    [[noreturn]] void fail(const Token& tok, std::string message)
    {
      throw Fail{ParseError{tok.line, tok.col, std::move(message)}};
    }

    bool parseNumber(const std::string& raw, uint64_t& out)
    {
      std::string t;
      for (char c : raw)
        if (c != '_')
          t += c;
      if (t.empty())
        return false;

      unsigned base = 10;
      size_t start = 0;
      if (t.size() > 2 and t[0] == '0' and (t[1] == 'x' or t[1] == 'X'))
        {
          base = 16;
          start = 2;
        }
      else if (t.size() > 2 and t[0] == '0' and (t[1] == 'b' or t[1] == 'B'))
        {
          base = 2;
          start = 2;
        }

      if (start >= t.size())
        return false;

      uint64_t value = 0;
      for (size_t i = start; i < t.size(); ++i)
        {
          char c = char(std::tolower(uint8_t(t[i])));
          unsigned digit;
          if (c >= '0' and c <= '9')
            digit = unsigned(c - '0');
          else if (c >= 'a' and c <= 'f')
            digit = unsigned(c - 'a') + 10;
          else
            return false;
          if (digit >= base)
            return false;
          uint64_t next = value * base + digit;
          if (next < value)
            return false;   // overflow
          value = next;
        }
      out = value;
      return true;
    }

    std::vector<Token> lex(std::string_view text)
    {
      std::vector<Token> tokens;
      unsigned line = 1;
      unsigned col = 1;
      size_t i = 0;
      const size_t n = text.size();

      auto push = [&](Tok kind, std::string t, unsigned ln, unsigned cl) {
        Token tok;
        tok.kind = kind;
        tok.text = std::move(t);
        tok.line = ln;
        tok.col = cl;
        tokens.push_back(std::move(tok));
      };

      while (i < n)
        {
          char c = text[i];
          if (c == '\n')
            {
              push(Tok::Newline, "\n", line, col);
              ++i;
              ++line;
              col = 1;
              continue;
            }
          if (c == ' ' or c == '\t' or c == '\r')
            {
              ++i;
              ++col;
              continue;
            }
          if (c == '#')
            {
              while (i < n and text[i] != '\n')
                {
                  ++i;
                  ++col;
                }
              continue;
            }

          unsigned startCol = col;
          if (std::isdigit(uint8_t(c)))
            {
              std::string t;
              while (i < n and (std::isalnum(uint8_t(text[i])) or text[i] == '_'))
                {
                  t += text[i];
                  ++i;
                  ++col;
                }
              Token tok;
              tok.kind = Tok::Number;
              tok.text = t;
              tok.line = line;
              tok.col = startCol;
              if (not parseNumber(t, tok.number))
                throw Fail{ParseError{line, startCol, "malformed number '" + t + "'"}};
              tokens.push_back(std::move(tok));
              continue;
            }
          if (std::isalpha(uint8_t(c)) or c == '_')
            {
              std::string t;
              while (i < n and (std::isalnum(uint8_t(text[i])) or text[i] == '_'
                                or text[i] == '.'))
                {
                  t += text[i];
                  ++i;
                  ++col;
                }
              push(Tok::Ident, std::move(t), line, startCol);
              continue;
            }

          auto two = [&](char a, char b) {
            return c == a and i + 1 < n and text[i + 1] == b;
          };
          if (two('=', '='))
            {
              push(Tok::Punct, "==", line, startCol);
              i += 2;
              col += 2;
              continue;
            }
          if (two('=', '>'))
            {
              push(Tok::Punct, "=>", line, startCol);
              i += 2;
              col += 2;
              continue;
            }
          if (two('<', '=') or two('>', '=') or two('!', '='))
            {
              push(Tok::Punct, std::string{c, '='}, line, startCol);
              i += 2;
              col += 2;
              continue;
            }
          if (std::string_view("{}[];:,=+<>").find(c) != std::string_view::npos)
            {
              push(Tok::Punct, std::string(1, c), line, startCol);
              ++i;
              ++col;
              continue;
            }
          throw Fail{ParseError{line, startCol,
                                std::string("unexpected character '") + c + "'"}};
        }

      Token end;
      end.kind = Tok::End;
      end.line = line;
      end.col = col;
      tokens.push_back(end);
      return tokens;
    }

    class Parser
    {
    public:

      explicit Parser(std::string_view text)
        : tokens_(lex(text))
      { }

      ScenarioProgram parse();

    private:

      const Token& peek(unsigned ahead = 0) const
      {
        size_t ix = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[ix];
      }

      const Token& next()
      {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size())
          ++pos_;
        return t;
      }

      void skipNewlines()
      {
        while (peek().kind == Tok::Newline)
          next();
      }

      bool atPunct(std::string_view p) const
      { return peek().kind == Tok::Punct and peek().text == p; }

      bool atIdent(std::string_view name) const
      { return peek().kind == Tok::Ident and peek().text == name; }

      const Token& expectPunct(std::string_view p)
      {
        if (not atPunct(p))
          fail(peek(), "expected '" + std::string(p) + "'");
        return next();
      }

      const Token& expectIdent()
      {
        if (peek().kind != Tok::Ident)
          fail(peek(), "expected an identifier");
        return next();
      }

      const Token& expectKeyword(std::string_view name)
      {
        if (not atIdent(name))
          fail(peek(), "expected '" + std::string(name) + "'");
        return next();
      }

      uint64_t expectNumber()
      {
        if (peek().kind != Tok::Number)
          fail(peek(), "expected a number");
        return next().number;
      }

      void endStatement()
      {
        if (peek().kind != Tok::Newline and peek().kind != Tok::End)
          fail(peek(), "unexpected token at end of statement");
      }

      // platform block
      void parsePlatform(PlatformBlock& block);
      void parseHartDecl(PlatformBlock& block);
      void parseAnmDecl(PlatformBlock& block);
      void parseResourceDecl(PlatformBlock& block, bool memory);
      void parseVmDecl(PlatformBlock& block);

      // statements
      Statement parseOnStatement(const PlatformBlock& block);
      Statement parseAnmStatement(const PlatformBlock& block);
      Statement parseCheckerStatement(const PlatformBlock& block);
      Statement parseExpectStatStatement();

      Expectation parseExpectation();
      void parsePerms(const Token& tok, std::string_view allowed,
                      bool& r, bool& w, bool& x);
      unsigned parseDeclaredHart(const PlatformBlock& block);

      std::vector<Token> tokens_;
      size_t pos_ = 0;
    };

    void Parser::parsePerms(const Token& tok, std::string_view allowed,
                            bool& r, bool& w, bool& x)
    {
      r = w = x = false;
      if (tok.text == "none")
        return;
      for (char c : tok.text)
        {
          if (allowed.find(c) == std::string_view::npos)
            fail(tok, "bad permission letters '" + tok.text + "'");
          if (c == 'r')
            r = true;
          else if (c == 'w')
            w = true;
          else if (c == 'x')
            x = true;
        }
    }

    unsigned Parser::parseDeclaredHart(const PlatformBlock& block)
    {
      const Token& tok = peek();
      unsigned id = unsigned(expectNumber());
      for (const HartConfig& h : block.harts)
        if (h.hartId == id)
          return id;
      fail(tok, "hart " + std::to_string(id) + " is not declared");
    }

    Expectation Parser::parseExpectation()
    {
      Expectation e;
      const Token& tok = expectIdent();
      if (tok.text == "allow")
        {
          e.allow = true;
          return e;
        }
      if (tok.text != "deny")
        fail(tok, "expected allow or deny");
      e.allow = false;
      if (atPunct(":"))
        {
          next();
          const Token& stageTok = expectIdent();
          auto stage = denyStageFromString(stageTok.text);
          if (not stage)
            fail(stageTok, "unknown deny stage '" + stageTok.text + "'");
          e.stage = stage;
        }
      return e;
    }

    void Parser::parseHartDecl(PlatformBlock& block)
    {
      HartConfig h;
      const Token& idTok = peek();
      h.hartId = unsigned(expectNumber());
      for (const HartConfig& other : block.harts)
        if (other.hartId == h.hartId)
          fail(idTok, "duplicate hart id " + std::to_string(h.hartId));

      expectPunct("{");
      skipNewlines();
      while (not atPunct("}"))
        {
          const Token& key = expectIdent();
          expectPunct("=");
          if (key.text == "mwid")
            h.mwid = Wid(expectNumber());
          else if (key.text == "ext")
            {
              expectPunct("[");
              while (not atPunct("]"))
                {
                  const Token& e = expectIdent();
                  if (e.text == "hyp")
                    h.ext.hypervisor = true;
                  else if (e.text == "smwg")
                    h.ext.smwg = true;
                  else if (e.text == "smwgd")
                    h.ext.smwgd = true;
                  else if (e.text == "sswg")
                    h.ext.sswg = true;
                  else if (e.text == "shwgd")
                    h.ext.shwgd = true;
                  else if (e.text == "slwgd")
                    h.ext.slwgd = true;
                  else if (e.text == "spmp")
                    h.ext.spmp = true;
                  else if (e.text == "spmphyp")
                    h.ext.spmpHypervisor = true;
                  else
                    fail(e, "unknown extension '" + e.text + "'");
                  if (atPunct(","))
                    next();
                }
              expectPunct("]");
            }
          else if (key.text == "spmp")
            {
              const Token& m = expectIdent();
              if (m.text == "unified")
                h.model = SpmpModel::Unified;
              else if (m.text == "separate")
                {
                  h.model = SpmpModel::Separate;
                  expectPunct(":");
                  h.splitIndex = unsigned(expectNumber());
                }
              else
                fail(m, "expected unified or separate:<split>");
            }
          else if (key.text == "entries")
            h.spmpEntries = unsigned(expectNumber());
          else
            fail(key, "unknown hart key '" + key.text + "'");
          expectPunct(";");
          skipNewlines();
        }
      expectPunct("}");
      block.harts.push_back(h);
    }

    void Parser::parseAnmDecl(PlatformBlock& block)
    {
      Anm a;
      a.name = expectIdent().text;
      expectPunct("{");
      skipNewlines();
      while (not atPunct("}"))
        {
          const Token& key = expectIdent();
          expectPunct("=");
          if (key.text == "wid")
            a.wid = Wid(expectNumber());
          else
            fail(key, "unknown anm key '" + key.text + "'");
          expectPunct(";");
          skipNewlines();
        }
      expectPunct("}");
      block.anms.push_back(a);
    }

    void Parser::parseResourceDecl(PlatformBlock& block, bool memory)
    {
      ResourceDecl r;
      r.memory = memory;
      r.name = expectIdent().text;
      expectPunct("{");
      skipNewlines();
      while (not atPunct("}"))
        {
          const Token& key = expectIdent();
          expectPunct("=");
          if (key.text == "base")
            r.base = expectNumber();
          else if (key.text == "size")
            r.size = expectNumber();
          else if (key.text == "slots")
            r.slots = unsigned(expectNumber());
          else
            fail(key, "unknown resource key '" + key.text + "'");
          expectPunct(";");
          skipNewlines();
        }
      expectPunct("}");
      block.resources.push_back(r);
    }

    void Parser::parseVmDecl(PlatformBlock& block)
    {
      VmDecl vm;
      vm.name = expectIdent().text;
      expectPunct("{");
      skipNewlines();
      while (not atPunct("}"))
        {
          const Token& key = expectIdent();
          if (key.text == "entry")
            {
              VmEntryDecl e;
              e.index = unsigned(expectNumber());
              const Token& modeTok = expectIdent();
              auto mode = addrModeFromString(modeTok.text);
              if (not mode)
                fail(modeTok, "unknown address mode '" + modeTok.text + "'");
              e.mode = *mode;
              if (e.mode != AddrMode::Off)
                {
                  const Token& aTok = peek();
                  e.a = expectNumber();
                  if (e.mode == AddrMode::Napot)
                    {
                      expectPunct("+");
                      e.b = expectNumber();
                    }
                  const Token& permTok = expectIdent();
                  parsePerms(permTok, "rwx", e.r, e.w, e.x);
                  if (atIdent("s"))
                    {
                      next();
                      e.s = true;
                    }
                  if (not encodeEntry(e.mode, e.a, e.b, e.r, e.w, e.x, e.s, false))
                    fail(aTok, "unencodable entry operands");
                }
              vm.entries.push_back(e);
            }
          else
            {
              expectPunct("=");
              if (key.text == "hslwid")
                vm.hslwid = Wid(expectNumber());
              else if (key.text == "wids")
                {
                  expectPunct("[");
                  while (not atPunct("]"))
                    {
                      vm.wids.push_back(Wid(expectNumber()));
                      if (atPunct(","))
                        next();
                    }
                  expectPunct("]");
                }
              else if (key.text == "hswitch")
                vm.hswitch = expectNumber();
              else if (key.text == "prestaged")
                {
                  if (peek().kind == Tok::Number)
                    vm.prestaged = expectNumber() != 0;
                  else
                    {
                      const Token& b = expectIdent();
                      if (b.text == "true")
                        vm.prestaged = true;
                      else if (b.text == "false")
                        vm.prestaged = false;
                      else
                        fail(b, "expected 0, 1, true or false");
                    }
                }
              else
                fail(key, "unknown vm key '" + key.text + "'");
            }
          expectPunct(";");
          skipNewlines();
        }
      expectPunct("}");
      block.vms.push_back(vm);
    }

    void Parser::parsePlatform(PlatformBlock& block)
    {
      expectPunct("{");
      skipNewlines();
      while (not atPunct("}"))
        {
          const Token& key = expectIdent();
          if (key.text == "nworlds")
            {
              expectPunct("=");
              block.nworlds = unsigned(expectNumber());
              expectPunct(";");
            }
          else if (key.text == "hart")
            parseHartDecl(block);
          else if (key.text == "anm")
            parseAnmDecl(block);
          else if (key.text == "memory")
            parseResourceDecl(block, true);
          else if (key.text == "peripheral")
            parseResourceDecl(block, false);
          else if (key.text == "vm")
            parseVmDecl(block);
          else
            fail(key, "unknown platform item '" + key.text + "'");
          skipNewlines();
        }
      expectPunct("}");
    }

    Statement Parser::parseOnStatement(const PlatformBlock& block)
    {
      Statement stmt;
      const Token& start = peek();
      stmt.line = start.line;
      stmt.col = start.col;
      next();   // 'on'

      unsigned hart = parseDeclaredHart(block);
      expectPunct(":");
      const Token& verb = expectIdent();

      if (verb.text == "mode")
        {
          const Token& m = expectIdent();
          auto mode = privModeFromString(m.text);
          if (not mode)
            fail(m, "unknown mode '" + m.text + "'");
          stmt.node = ModeStmt{hart, *mode};
        }
      else if (verb.text == "csrw")
        {
          const Token& c = expectIdent();
          auto csr = csrFromString(c.text);
          if (not csr)
            fail(c, "unknown csr '" + c.text + "'");
          uint64_t value = expectNumber();
          stmt.node = CsrwStmt{hart, *csr, value};
        }
      else if (verb.text == "expect")
        {
          expectKeyword("csrr");
          const Token& c = expectIdent();
          auto csr = csrFromString(c.text);
          if (not csr)
            fail(c, "unknown csr '" + c.text + "'");
          expectPunct("==");
          uint64_t value = expectNumber();
          stmt.node = ExpectCsrrStmt{hart, *csr, value};
        }
      else if (verb.text == "spmp")
        {
          SpmpStmt s;
          s.hart = hart;
          const Token& ixTok = peek();
          s.index = unsigned(expectNumber());
          if (s.index >= 64)
            fail(ixTok, "entry index must be below 64");
          const Token& modeTok = expectIdent();
          auto mode = addrModeFromString(modeTok.text);
          if (not mode)
            fail(modeTok, "unknown address mode '" + modeTok.text + "'");
          s.mode = *mode;
          if (s.mode != AddrMode::Off)
            {
              const Token& aTok = peek();
              s.a = expectNumber();
              if (s.mode == AddrMode::Napot)
                {
                  expectPunct("+");
                  s.b = expectNumber();
                }
              const Token& permTok = expectIdent();
              parsePerms(permTok, "rwx", s.r, s.w, s.x);
              while (peek().kind == Tok::Ident
                     and (peek().text == "s" or peek().text == "l"))
                {
                  if (next().text == "s")
                    s.s = true;
                  else
                    s.lock = true;
                }
              if (not encodeEntry(s.mode, s.a, s.b, s.r, s.w, s.x, s.s, s.lock))
                fail(aTok, "unencodable entry operands");
            }
          stmt.node = s;
        }
      else if (verb.text == "access")
        {
          AccessStmt a;
          a.hart = hart;
          const Token& k = expectIdent();
          if (k.text == "r")
            a.kind = AccessKind::Read;
          else if (k.text == "w")
            a.kind = AccessKind::Write;
          else if (k.text == "x")
            a.kind = AccessKind::Execute;
          else
            fail(k, "expected r, w or x");
          const Token& addrTok = peek();
          a.addr = expectNumber();
          if (peek().kind == Tok::Number)
            {
              const Token& szTok = peek();
              a.size = unsigned(expectNumber());
              if (a.size != 1 and a.size != 2 and a.size != 4 and a.size != 8)
                fail(szTok, "size must be 1, 2, 4 or 8");
            }
          if (a.addr + a.size < a.addr)
            fail(addrTok, "access wraps the address space");
          expectPunct("=>");
          a.expect = parseExpectation();
          stmt.node = a;
        }
      else if (verb.text == "vmswitch")
        {
          const Token& nameTok = expectIdent();
          bool known = false;
          for (const VmDecl& vm : block.vms)
            known = known or vm.name == nameTok.text;
          if (not known)
            fail(nameTok, "vm '" + nameTok.text + "' is not declared");
          stmt.node = VmSwitchStmt{hart, nameTok.text};
        }
      else
        fail(verb, "unknown statement '" + verb.text + "'");

      endStatement();
      return stmt;
    }

    Statement Parser::parseAnmStatement(const PlatformBlock& block)
    {
      Statement stmt;
      const Token& start = peek();
      stmt.line = start.line;
      stmt.col = start.col;
      next();   // 'anm'

      const Token& nameTok = expectIdent();
      bool known = false;
      for (const Anm& a : block.anms)
        known = known or a.name == nameTok.text;
      if (not known)
        fail(nameTok, "anm '" + nameTok.text + "' is not declared");

      expectPunct(":");
      expectKeyword("access");
      const Token& k = expectIdent();
      AnmAccessStmt a;
      a.anm = nameTok.text;
      if (k.text == "r")
        a.write = false;
      else if (k.text == "w")
        a.write = true;
      else
        fail(k, "expected r or w");
      a.addr = expectNumber();
      expectPunct("=>");
      a.expect = parseExpectation();
      stmt.node = a;
      endStatement();
      return stmt;
    }

    Statement Parser::parseCheckerStatement(const PlatformBlock& block)
    {
      Statement stmt;
      const Token& start = peek();
      stmt.line = start.line;
      stmt.col = start.col;
      next();   // 'checker'

      CheckerStmt c;
      const Token& nameTok = expectIdent();
      c.resource = nameTok.text;
      bool known = false;
      for (const ResourceDecl& r : block.resources)
        known = known or r.name == c.resource;
      if (not known)
        fail(nameTok, "resource '" + c.resource + "' is not declared");

      expectKeyword("slot");
      c.slot = unsigned(expectNumber());
      if (atIdent("range"))
        {
          next();
          uint64_t off = expectNumber();
          uint64_t len = expectNumber();
          c.range = {off, len};
        }
      while (atIdent("wid"))
        {
          next();
          const Token& widTok = peek();
          Wid wid = Wid(expectNumber());
          if (wid >= block.nworlds)
            fail(widTok, "wid " + std::to_string(wid) + " is not below nworlds");
          const Token& permTok = expectIdent();
          bool r = false, w = false, x = false;
          parsePerms(permTok, "rw", r, w, x);
          c.wids.push_back({wid, Perm{r, w}});
        }
      if (atIdent("lock"))
        {
          next();
          c.lock = true;
        }
      stmt.node = c;
      endStatement();
      return stmt;
    }

    Statement Parser::parseExpectStatStatement()
    {
      Statement stmt;
      const Token& start = peek();
      stmt.line = start.line;
      stmt.col = start.col;
      next();   // 'expect'

      expectKeyword("stat");
      ExpectStatStmt s;
      s.counter = expectIdent().text;
      const Token& opTok = peek();
      if (opTok.kind != Tok::Punct)
        fail(opTok, "expected a comparison operator");
      next();
      if (opTok.text == "==")
        s.op = CmpOp::Eq;
      else if (opTok.text == "!=")
        s.op = CmpOp::Ne;
      else if (opTok.text == "<")
        s.op = CmpOp::Lt;
      else if (opTok.text == "<=")
        s.op = CmpOp::Le;
      else if (opTok.text == ">")
        s.op = CmpOp::Gt;
      else if (opTok.text == ">=")
        s.op = CmpOp::Ge;
      else
        fail(opTok, "expected a comparison operator");
      s.value = int64_t(expectNumber());
      stmt.node = s;
      endStatement();
      return stmt;
    }

    ScenarioProgram Parser::parse()
    {
      ScenarioProgram program;
      skipNewlines();

      const Token& platformTok = peek();
      if (not atIdent("platform"))
        fail(platformTok, "expected the platform block first");
      next();
      parsePlatform(program.platform);

      // The platform must assemble before any statement is checked
      // against it.
      auto decl = toPlatformDecl(program.platform);
      if (std::holds_alternative<std::string>(decl))
        fail(platformTok, std::get<std::string>(decl));
      auto built = Platform::build(std::get<PlatformDecl>(decl));
      if (std::holds_alternative<std::string>(built))
        fail(platformTok, std::get<std::string>(built));

      skipNewlines();
      while (peek().kind != Tok::End)
        {
          if (atIdent("on"))
            program.steps.push_back(parseOnStatement(program.platform));
          else if (atIdent("anm"))
            program.steps.push_back(parseAnmStatement(program.platform));
          else if (atIdent("checker"))
            program.steps.push_back(parseCheckerStatement(program.platform));
          else if (atIdent("expect"))
            program.steps.push_back(parseExpectStatStatement());
          else if (atIdent("platform"))
            fail(peek(), "duplicate platform block");
          else
            fail(peek(), "expected a statement");
          skipNewlines();
        }
      return program;
    }

  }

  std::variant<ScenarioProgram, ParseError> parseScenario(std::string_view text)
  {
    try
      {
        Parser parser(text);
        return parser.parse();
      }
    catch (const Fail& f)
      {
        return f.error;
      }
  }

  namespace
  {

    std::string hex(uint64_t v)
    {
      char buf[24];
      snprintf(buf, sizeof(buf), "0x%llx", (unsigned long long) v);
      return buf;
    }

    std::string permString(bool r, bool w, bool x)
    {
      std::string s;
      if (r)
        s += 'r';
      if (w)
        s += 'w';
      if (x)
        s += 'x';
      return s.empty() ? "none" : s;
    }

    void printEntryOperands(std::ostringstream& os, AddrMode mode, uint64_t a,
                            uint64_t b, bool r, bool w, bool x, bool s, bool lock)
    {
      os << toString(mode);
      if (mode == AddrMode::Off)
        return;
      if (mode == AddrMode::Napot)
        os << ' ' << hex(a) << '+' << hex(b);
      else
        os << ' ' << hex(a);
      os << ' ' << permString(r, w, x);
      if (s)
        os << " s";
      if (lock)
        os << " l";
    }

    void printExpectation(std::ostringstream& os, const Expectation& e)
    {
      if (e.allow)
        {
          os << "allow";
          return;
        }
      os << "deny";
      if (e.stage)
        os << ':' << toString(*e.stage);
    }

  }

  std::string printScenario(const ScenarioProgram& program)
  {
    std::ostringstream os;
    const PlatformBlock& p = program.platform;

    os << "platform {\n";
    os << "  nworlds=" << p.nworlds << ";\n";
    for (const HartConfig& h : p.harts)
      {
        os << "  hart " << h.hartId << " { mwid=" << h.mwid << "; ext=[";
        bool first = true;
        auto emit = [&](bool flag, const char* name) {
          if (not flag)
            return;
          if (not first)
            os << ',';
          os << name;
          first = false;
        };
        emit(h.ext.hypervisor, "hyp");
        emit(h.ext.smwg, "smwg");
        emit(h.ext.smwgd, "smwgd");
        emit(h.ext.sswg, "sswg");
        emit(h.ext.shwgd, "shwgd");
        emit(h.ext.slwgd, "slwgd");
        emit(h.ext.spmp, "spmp");
        emit(h.ext.spmpHypervisor, "spmphyp");
        os << "]; spmp=";
        if (h.model == SpmpModel::Unified)
          os << "unified";
        else
          os << "separate:" << h.splitIndex;
        os << "; entries=" << h.spmpEntries << "; }\n";
      }
    for (const Anm& a : p.anms)
      os << "  anm " << a.name << " { wid=" << a.wid << "; }\n";
    for (const ResourceDecl& r : p.resources)
      os << "  " << (r.memory ? "memory" : "peripheral") << ' ' << r.name
         << " { base=" << hex(r.base) << "; size=" << hex(r.size)
         << "; slots=" << r.slots << "; }\n";
    for (const VmDecl& vm : p.vms)
      {
        os << "  vm " << vm.name << " { hslwid=" << vm.hslwid << "; wids=[";
        for (size_t i = 0; i < vm.wids.size(); ++i)
          {
            if (i)
              os << ',';
            os << vm.wids[i];
          }
        os << "]; hswitch=" << hex(vm.hswitch)
           << "; prestaged=" << (vm.prestaged ? 1 : 0) << ";";
        for (const VmEntryDecl& e : vm.entries)
          {
            os << " entry " << e.index << ' ';
            printEntryOperands(os, e.mode, e.a, e.b, e.r, e.w, e.x, e.s, false);
            os << ';';
          }
        os << " }\n";
      }
    os << "}\n";

    for (const Statement& stmt : program.steps)
      {
        std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ModeStmt>)
              os << "on " << node.hart << ": mode " << toString(node.mode);
            else if constexpr (std::is_same_v<T, CsrwStmt>)
              os << "on " << node.hart << ": csrw " << toString(node.csr) << ' '
                 << hex(node.value);
            else if constexpr (std::is_same_v<T, ExpectCsrrStmt>)
              os << "on " << node.hart << ": expect csrr " << toString(node.csr)
                 << " == " << hex(node.value);
            else if constexpr (std::is_same_v<T, SpmpStmt>)
              {
                os << "on " << node.hart << ": spmp " << node.index << ' ';
                printEntryOperands(os, node.mode, node.a, node.b, node.r,
                                   node.w, node.x, node.s, node.lock);
              }
            else if constexpr (std::is_same_v<T, AccessStmt>)
              {
                os << "on " << node.hart << ": access " << toString(node.kind)
                   << ' ' << hex(node.addr) << ' ' << node.size << " => ";
                printExpectation(os, node.expect);
              }
            else if constexpr (std::is_same_v<T, VmSwitchStmt>)
              os << "on " << node.hart << ": vmswitch " << node.vm;
            else if constexpr (std::is_same_v<T, AnmAccessStmt>)
              {
                os << "anm " << node.anm << ": access " << (node.write ? 'w' : 'r')
                   << ' ' << hex(node.addr) << " => ";
                printExpectation(os, node.expect);
              }
            else if constexpr (std::is_same_v<T, CheckerStmt>)
              {
                os << "checker " << node.resource << " slot " << node.slot;
                if (node.range)
                  os << " range " << hex(node.range->first) << ' '
                     << hex(node.range->second);
                for (const WidPermDecl& wp : node.wids)
                  os << " wid " << wp.wid << ' '
                     << permString(wp.perm.r, wp.perm.w, false);
                if (node.lock)
                  os << " lock";
              }
            else if constexpr (std::is_same_v<T, ExpectStatStmt>)
              os << "expect stat " << node.counter << ' ' << toString(node.op)
                 << ' ' << node.value;
          },
          stmt.node);
        os << '\n';
      }
    return os.str();
  }

}
