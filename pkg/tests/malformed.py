"""Malformed workspaces paired with the token each error must point at ("" is end of input)."""

V = "category V { objects: b, a, c arrows: f: b -> a, g: b -> c }\n"

CASES = [
    ("catgory One { objects: star }", "catgory"),
    ("category { objects: star }", "{"),
    ("category One objects: star }", "objects"),
    ("category One { objects: star", ""),
    ("category One { objects star }", "objects"),
    ("category One { objects: a b }", "b"),
    ("category One { objects: a, }", "}"),
    ("category One { objects: a,, b }", ","),
    ("category One { objects: a } }", "}"),
    ("category One { objects: a objects: b }", "objects"),
    ("category One { things: a }", "things"),
    ("category One { objects: a }\ncategory One { objects: b }", "One"),
    ("category One { objects: a, a }", "a"),
    ("category A { objects: a arrows: f: a -> z }", "z"),
    ("category A { objects: a arrows: f: q -> a }", "q"),
    ("category A { objects: a arrows: f a -> a }", "a"),
    ("category A { objects: a arrows: f: a => a }", "=>"),
    ("category A { objects: a arrows: f: a -> }", "}"),
    ("category A { objects: a, b arrows: f: a -> b, f: b -> a }", "f"),
    ("category A { objects: a arrows: id_a: a -> a }", "id_a"),
    ("category A { objects: a arrows: e: a -> a }", "e"),
    ("category A { objects: a arrows: e: a -> a compose: e . e = h }", "h"),
    ("category A { objects: a arrows: e: a -> a compose: e e = e }", "e"),
    ("category A { objects: a arrows: e: a -> a compose: e . e e }", "e"),
    ("category A { objects: a, b arrows: f: a -> b, g: a -> b compose: f . g = f }", "f"),
    ("category A { objects: a arrows: e: a -> a, s: a -> a compose: e . e = e, e . s = e, s . e = s, s . s = e }", "s"),
    ("category A { objects: a arrows: e: a -> a compose: e . e = e, e . e = id_a }", "e"),
    ("category A { objects: a } @", "@"),
    ("category A { objects: a ( }", "("),
    ("functor F : A -> B { }", "A"),
    (V + "functor F : V -> Nope { }", "Nope"),
    (V + "functor F V -> V { }", "V"),
    (V + "functor F : V => V { }", "=>"),
    (V + "functor F : V -> V { obj: b => z }", "z"),
    (V + "functor F : V -> V { obj: z => b }", "z"),
    (V + "functor F : V -> V { obj: b => b, b => a }", "b"),
    (V + "functor F : V -> V { obj: b => b, a => a, c => c }", "F"),
    (V + "functor F : V -> V { obj: b => b, a => a, c => c mor: f => g, g => g }", "f"),
    (V + "functor F : V -> V { obj: b -> b }", "obj"),
    (V + "functor F : V -> V { map: b => b }", "map"),
    (V + "class K in V { f, nope }", "nope"),
    (V + "class K on V { f }", "on"),
    (V + "class K in V { f g }", "g"),
    (V + "class K in V { f, }", "}"),
    (V + "gamma G in V { cone b -> [f, h] }", "h"),
    (V + "gamma G in V { cone a -> [f] }", "f"),
    (V + "gamma G in V { cone z -> [] }", "z"),
    (V + "gamma G in V { cone b [f] }", "["),
    (V + "gamma G in V { cones b -> [f] }", "cones"),
    (V + "diagram D : V -> W { obj: b => b }", "W"),
]

assert len(CASES) == 50
