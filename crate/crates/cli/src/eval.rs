use std::collections::BTreeMap;

use eucliff::{
    geometric_product, left_contraction, right_contraction, scalar_product, wedge, EuclideanMetric,
    Multivector,
};

use crate::parser::{parse, BinaryOp, Expr, Statement, UnaryOp};
use crate::CliError;

/// Result of evaluating an expression. Scalar products stay plain reals.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Mv(Multivector),
}

impl Value {
    pub fn into_multivector(self, dim: usize) -> Multivector {
        match self {
            Value::Real(v) => Multivector::scalar(dim, v).expect("session dimension is valid"),
            Value::Mv(m) => m,
        }
    }
}

/// What a line produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Value(Value),
    Bound { name: String, value: Value },
}

/// Dimension, metric and variable bindings for a run of the CLI.
#[derive(Debug, Clone)]
pub struct Session {
    metric: EuclideanMetric,
    bindings: BTreeMap<String, Multivector>,
}

impl Session {
    pub fn new(metric: EuclideanMetric) -> Session {
        Session {
            metric,
            bindings: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn metric(&self) -> &EuclideanMetric {
        &self.metric
    }

    pub fn binding(&self, name: &str) -> Option<&Multivector> {
        self.bindings.get(name)
    }

    /// Parses and evaluates one line, binding the value for assignments.
    pub fn execute(&mut self, line: &str) -> Result<Outcome, CliError> {
        let statement = parse(line, self.dim(), &|name| self.bindings.contains_key(name))?;
        match statement {
            Statement::Eval(expr) => Ok(Outcome::Value(self.eval(&expr)?)),
            Statement::Assign { name, value } => {
                let value = self.eval(&value)?;
                self.bindings
                    .insert(name.clone(), value.clone().into_multivector(self.dim()));
                Ok(Outcome::Bound { name, value })
            }
        }
    }

    pub fn eval(&self, expr: &Expr) -> Result<Value, CliError> {
        let n = self.dim();
        let value = match expr {
            Expr::Number { value, .. } => Value::Mv(scalar(n, *value)),
            Expr::Blade { mask, sign, .. } => Value::Mv(
                Multivector::blade(n, *mask)
                    .expect("blade checked by the parser")
                    .scale(*sign),
            ),
            Expr::Pseudoscalar { .. } => {
                Value::Mv(Multivector::pseudoscalar(n).expect("session dimension is valid"))
            }
            Expr::Var { name, col } => Value::Mv(
                self.bindings
                    .get(name)
                    .cloned()
                    .ok_or_else(|| CliError::eval(*col, format!("unknown symbol `{name}`")))?,
            ),
            Expr::Unary { op, arg, .. } => {
                let x = self.eval(arg)?;
                match (op, x) {
                    (UnaryOp::Neg, Value::Real(v)) => Value::Real(-v),
                    (op, x) => {
                        let x = x.into_multivector(n);
                        Value::Mv(match op {
                            UnaryOp::Neg => -&x,
                            UnaryOp::Rev => x.reversion(),
                            UnaryOp::Hat => x.grade_involution(),
                            UnaryOp::Bar => x.conjugate(),
                        })
                    }
                }
            }
            Expr::Grade { arg, k, col } => {
                let x = self.eval(arg)?.into_multivector(n);
                Value::Mv(
                    x.k_part(*k)
                        .map_err(|e| CliError::eval(*col, e.to_string()))?,
                )
            }
            Expr::Binary { op, lhs, rhs, col } => {
                let x = self.eval(lhs)?.into_multivector(n);
                let y = self.eval(rhs)?.into_multivector(n);
                let g = &self.metric;
                let result = match op {
                    BinaryOp::Add => Ok(Value::Mv(&x + &y)),
                    BinaryOp::Sub => Ok(Value::Mv(&x - &y)),
                    BinaryOp::Wedge => wedge(&x, &y).map(Value::Mv),
                    BinaryOp::Geometric => geometric_product(&x, &y, g).map(Value::Mv),
                    BinaryOp::Scalar => scalar_product(&x, &y, g).map(Value::Real),
                    BinaryOp::LeftContract => left_contraction(&x, &y, g).map(Value::Mv),
                    BinaryOp::RightContract => right_contraction(&x, &y, g).map(Value::Mv),
                };
                let value = result.map_err(|e| CliError::eval(*col, e.to_string()))?;
                check_finite(&value, *col, op.symbol())?;
                value
            }
        };
        Ok(value)
    }
}

fn scalar(n: usize, v: f64) -> Multivector {
    Multivector::scalar(n, v).expect("session dimension is valid")
}

fn check_finite(value: &Value, col: usize, op: &str) -> Result<(), CliError> {
    let finite = match value {
        Value::Real(v) => v.is_finite(),
        Value::Mv(m) => m.coeffs().iter().all(|c| c.is_finite()),
    };
    if finite {
        Ok(())
    } else {
        Err(CliError::eval(
            col,
            format!("`{op}` produced a non-finite coefficient"),
        ))
    }
}
