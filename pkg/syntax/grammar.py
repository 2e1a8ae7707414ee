"""Grammar of the `.lp` surface language

Keywords (`symbol`, `rule`, `TYPE`, `Pi`, ...) are spelt like identifiers and
are told apart by lark's keyword handling. Identifiers exclude the
characters reserved for hats (`^`, U+0302), fresh names (`#`) and rule
variables (`$`), plus the arrow and comment openers.

"""

SOURCE_EXTENSION = ".lp"

GRAMMAR = r"""
start: _declaration*

_declaration: symbol_decl | rule_decl

symbol_decl: modifier* "symbol" IDENT ":" term ";"?

modifier: "constant"                    -> constant
        | "injective" index_set?        -> injective

index_set: "(" INT ("," INT)* ")"

rule_decl: "rule" rewrite ("with" rewrite)* ";"?

rewrite: term _REWRITE term

?term: binder
     | app_term _ARROW term             -> arrow
     | app_term

binder: ("Pi" | "Π") IDENT ":" term "," term -> pi
      | _LAMBDA IDENT ":" term "," term    -> lam

?app_term: app_term atom                -> app
         | atom

?atom: IDENT                            -> symbol
     | VAR                              -> var
     | "TYPE"                           -> sort
     | "(" term ")"

_ARROW: "->" | "→"
_REWRITE: "-->" | "↪"
_LAMBDA: "\\" | "λ"

NAME: /(?:[^\s(),:;$\\λΠ→↪#^\u0302\-\/]|-(?!-?>)|\/(?!\/))+/
IDENT: NAME
VAR: "$" NAME
INT: /[0-9]+/

COMMENT: /\/\/[^\n]*/

%ignore COMMENT
%ignore /\s+/
"""
