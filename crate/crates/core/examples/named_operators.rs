//! Non-symmetric shift operators acting on `E_n`.

use awcalc::families::{AWFamily, Construction};
use awcalc::matshift::{build_named_nonsym, verify_named_action, NamedTag};
use awcalc::scalars::{rat, Params};

fn main() -> awcalc::Result<()> {
    let p = Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9))?;
    let e1 = AWFamily::new(p.clone(), Construction::TriangularEigen).e(1)?;
    for tag in NamedTag::ALL {
        let op = build_named_nonsym(&p, tag)?;
        let rows = verify_named_action(&op, -4..=5)?;
        let ok = rows.iter().filter(|(_, ok)| *ok).count();
        println!("{tag:<3} shift {:<24} action verified on {ok}/{} members; E_1 -> {} terms", tag.shift().to_string(), rows.len(), op.apply(&e1)?.len());
    }
    Ok(())
}
