from typing import List, TypedDict, Union

# Integers outside the signed 64-bit range are carried as decimal strings.
WireInt = Union[int, str]


class LambdaTerm(TypedDict):
    k: WireInt
    coeff: WireInt


# "lambda" is a keyword, hence the functional form.
RepSpec = TypedDict(
    "RepSpec",
    {"m": WireInt, "trivial": WireInt, "sign": WireInt, "lambda": List[LambdaTerm]},
    total=False,
)
