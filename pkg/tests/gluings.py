"""Gluings of the worked examples, built directly from descriptors."""

from cyglue.oguiso import center_class, fiber_class, hyperplane_class, translation_pullback
from cyglue.snc import ComponentDescriptor, GluingDescriptor, product_of_lines, projective_space
from cyglue.wehler import power_closed_form, wehler_lattice


def main_gluing(a, c=None):
    W = wehler_lattice()
    c = a if c is None else c
    amb = product_of_lines(W)
    last = W(16 * a * a + 4 - c, 4 - 8 * a, 4 + 8 * a)
    x1 = ComponentDescriptor(amb, [W(1, 0, 0)] * c + [last], "X1")
    return GluingDescriptor(x1, ComponentDescriptor(amb, (), "X2"), power_closed_form(a))


def oguiso_gluing(a):
    amb = projective_space(hyperplane_class())
    x1 = ComponentDescriptor(amb, [fiber_class()] * a + [center_class(a)], "X1")
    return GluingDescriptor(x1, ComponentDescriptor(amb, (), "X2"), translation_pullback(a))


def identity_gluing():
    amb = product_of_lines(wehler_lattice())
    x = ComponentDescriptor(amb, (), "X")
    return GluingDescriptor(x, x, power_closed_form(0))


def double_blowup_gluing(a):
    W = wehler_lattice()
    amb = product_of_lines(W)
    c1 = W(4 * a * a + 2, 2 - 4 * a, 2 + 4 * a)
    x1 = ComponentDescriptor(amb, [W(1, 0, 0)] * (8 * a * a) + [c1], "X1")
    x2 = ComponentDescriptor(amb, [power_closed_form(-a)(c1)], "X2")
    return GluingDescriptor(x1, x2, power_closed_form(a))


def quartic_gluing(centers1, centers2):
    h = hyperplane_class()
    amb = projective_space(h)
    return GluingDescriptor(ComponentDescriptor(amb, [k * h for k in centers1], "X1"),
                            ComponentDescriptor(amb, [k * h for k in centers2], "X2"),
                            translation_pullback(1))
