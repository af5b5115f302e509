# qaffine/relations/grammar.py

"""
Lark grammar of the relation-suite language.

    suite k-commutation;
    [k1p-k1p] k1p(z) k1p(w) = k1p(w) k1p(z);
    [xm-xm] @cleared (z - w*q)/(z*q - w) * Xm(z) Xm(w)
        + (z - w*q^2)/(z*q^2 - w) * Xm(w) Xm(z) = 0;

A term is a product chain: a coefficient (numbers, variables, powers and
parenthesized sums joined by '*' and '/'), an optional ``@expand(x/y)`` tag,
then currents ``NAME(arg)``, ``NAME^-1(arg)`` and ``delta(...)`` joined by
juxtaposition or '*'. The transformer splits the chain and rejects orders
the grammar alone would allow.
"""

GRAMMAR = r"""
start: relation* suite*

suite: "suite" LABEL ";" relation*

relation: label? pragma* sum "=" sum ";"

label: "[" LABEL "]"

?pragma: "@cleared"                       -> cleared
       | expand

expand: "@expand" "(" NAME "/" NAME ")"

sum: ADDOP? product (ADDOP product)*

product: product "*" power                -> mul
       | product "*" call                 -> mul_call
       | product "/" power                -> div
       | product call                     -> juxtapose
       | product expand                   -> tagged
       | power                            -> first
       | call                             -> first

?power: NAME "^" exponent                 -> name_power
      | base "^" exponent                 -> base_power
      | base
      | NAME                              -> var

?base: INT                                -> number
     | "(" expr ")"

expr: ADDOP? product (ADDOP product)*

call: NAME "(" expr ")"                   -> current
    | NAME "^" exponent "(" expr ")"      -> current_power
    | "delta" "(" expr ")"                -> delta

exponent: SIGNED_INT                      -> int_exponent
        | "c"                             -> c_exponent
        | "(" ADDOP? exp_item (ADDOP exp_item)* ")" -> sum_exponent

exp_item: INT                             -> exp_int
        | INT "/" INT                     -> exp_fraction
        | INT "*" "c"                     -> exp_c_multiple
        | INT "/" INT "*" "c"             -> exp_c_fraction
        | "c"                             -> exp_c

ADDOP: "+" | "-"
LABEL: /[A-Za-z0-9_][A-Za-z0-9_+\-.]*/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
SIGNED_INT: /-?[0-9]+/
INT: /[0-9]+/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""
