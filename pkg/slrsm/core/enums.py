from enum import StrEnum


class HFunction(StrEnum):
    H11 = "h11"
    H12 = "h12"
    H21 = "h21"
    H22 = "h22"


class OracleMethod(StrEnum):
    DIRECT_SHOOTING = "direct_shooting"
    CLOSED_FORM_Q0 = "closed_form_q0"


class Side(StrEnum):
    L = "L"
    R = "R"


class Phase(StrEnum):
    PARSE = "parse"
    SAMPLING = "sampling"
    ROOTS = "roots"
    ORACLE = "oracle"
    ESTIMATE = "estimate"
    EIGEN = "eigen"
    GRAM = "gram"
    WRITE = "write"
