"""Lark grammar of the ``.hl`` declaration language"""

KEYWORDS = (
    "class",
    "instance",
    "lemma",
    "simp",
    "def",
    "goal",
    "sort",
    "op",
    "coercion",
    "by",
    "forall",
    "dvd",
)

_NAME_START = r"A-Za-z_Ͱ-Ͽℕℤℚℝ"
_NAME_REST = r"A-Za-z0-9_'Ͱ-Ͽ"

NAME_PATTERN = (
    rf"(?!(?:{'|'.join(KEYWORDS)})(?![{_NAME_REST}]))[{_NAME_START}][{_NAME_REST}]*"
)

GRAMMAR = r"""
start: declaration*

declaration: [doc] [attributes] _decl_body
doc: DOC
attributes: "[" attribute ("," attribute)* "]"
attribute: ATTR ["=" ATTR_VALUE]

_decl_body: sort_decl
          | op_decl
          | coercion_decl
          | class_decl
          | instance_decl
          | rule_decl
          | lemma_decl
          | goal_decl

sort_decl: "sort" NAME
op_decl: "op" op_symbol [":" sort]
!op_symbol: NAME | "+" | "*" | "-" | "^" | "•" | "*." | "≫" | ">>"
coercion_decl: "coercion" sort_atom ("->" | "→") sort_atom

class_decl: "class" NAME "(" NAME (","? NAME)* ")" [class_body]
class_body: "{" (_class_item (";" | ",")?)* "}"
_class_item: projection
           | class_op
!projection: "+" | "*" | "-" | "^" | "•" | "*." | "≫" | ">>" | NUMBER | NAME | relop
class_op: "op" NAME ":" sort

instance_decl: "instance" NAME ":" class_atom (("<-" | "←") class_atom ("," class_atom)*)?  -> instance_rule
             | "instance" NAME ":" class_atom ("," class_atom)* ("->" | "→") class_atom     -> instance_arrow

class_atom: NAME "(" sort ("," sort)* ")"   -> atom_call
          | NAME sort_atom+                 -> atom_juxt

rule_decl: rule_kind "lemma" NAME params ":" prop
!rule_kind: "simp" | "def"
lemma_decl: "lemma" NAME params ":" prop
goal_decl: "goal" NAME params ":" _goal_statement ["by" TACTIC]
_goal_statement: class_atom | prop

params: _param*
_param: binder | hypothesis | condition
binder: "(" NAME+ ":" sort ")"
hypothesis: "(" NAME ":" prop ")"
condition: "[" class_atom "]"

?sort: sort_atom
     | sort_atom ("->" | "→") sort -> arrow_sort
?sort_atom: NAME -> sort_name
          | "(" sort ")"

?prop: ("forall" | "∀") NAME ["<" term] "," prop -> forall
     | implication
?implication: disjunction
            | disjunction ("->" | "→") implication -> implies
?disjunction: conjunction
            | disjunction ("\\/" | "∨") conjunction -> or_
?conjunction: negation
            | conjunction ("/\\" | "∧") negation -> and_
?negation: ("~" | "¬") negation -> not_
         | prop_atom
?prop_atom: relation
          | relation ("<->" | "↔") relation -> iff
          | "(" prop ")"
relation: term relop term
!relop: "=" | "≠" | "!=" | "≤" | "<=" | "<" | "≥" | ">=" | ">" | "∣" | "dvd"

?term: sum
?sum: product
    | sum "+" product -> add
    | sum "-" product -> sub
?product: composition
        | product "*" composition -> mul
        | product ("•" | "*.") composition -> smul
?composition: unary
            | composition ("≫" | ">>") unary -> comp
?unary: power
      | "-" unary -> neg
?power: coercion
      | coercion "^" power -> pow
?coercion: postfix
         | ("↑" | "^^") coercion -> coe
?postfix: atom
        | postfix "(" term ("," term)* ")" -> call
?atom: NUMBER -> numeral
     | NAME -> name
     | "(" term ")"
     | "(" term ":" sort ")" -> ascription
     | ("∥" | "||") term ("∥" | "||") -> norm

term_entry: term | prop
sort_entry: sort
atom_entry: class_atom
goal_entry: _goal_statement

NAME: /%(name)s/
NUMBER: /[0-9]+/
DOC: /\/--[\s\S]*?-\//
TACTIC: /[a-z_]+/
ATTR: /[a-z_]+/
ATTR_VALUE: /[A-Za-z0-9_]+/
COMMENT: /#[^\n]*/

%%import common.WS
%%ignore WS
%%ignore COMMENT
""" % {"name": NAME_PATTERN}

START_SYMBOLS = ["start", "term_entry", "sort_entry", "atom_entry", "goal_entry"]
